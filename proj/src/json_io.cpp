#include "parcut/json_io.hpp"

namespace parcut {
namespace io {

namespace {

Json vset_json(const VSet &s) { return Json(s); }

Json ext_rat_json(const ExtRat &r) { return rat_str(r); }

}  // namespace

Json to_json(const EdgeCut &cut) {
  Json j;
  j["side"] = vset_json(cut.side);
  j["boundary"] = cut.boundary_size;
  j["sparsity"] = rat_str(cut.sparsity);
  if (cut.has_terminal_sparsity) j["terminal_sparsity"] = ext_rat_json(cut.terminal_sparsity);
  return j;
}

Json to_json(const VertexCut &cut) {
  Json j;
  j["left"] = vset_json(cut.left);
  j["separator"] = vset_json(cut.separator);
  j["right"] = vset_json(cut.right);
  j["sparsity"] = rat_str(cut.sparsity);
  if (cut.has_terminal_sparsity) j["terminal_sparsity"] = ext_rat_json(cut.terminal_sparsity);
  return j;
}

Json to_json(const oracle::OracleAnswer &ans) {
  Json j;
  j["optimum"] = rat_str(ans.optimum);
  j["argmin"] = vset_json(ans.argmin);
  if (!ans.separator.empty()) {
    j["separator"] = vset_json(ans.separator);
    j["right"] = vset_json(ans.right);
  }
  j["enumerated"] = ans.enumerated;
  j["telemetry"] = Json{{"wall_seconds_float", ans.wall_seconds}};
  return j;
}

Json to_json(const cm::Certificate &cert) {
  Json j;
  j["phi_used"] = rat_str(cert.phi_used);
  j["rounds"] = cert.rounds;
  j["matchings"] = cert.matchings;
  j["h_min_sparsity"] = rat_str(cert.h_min_sparsity);
  j["h_argmin"] = vset_json(cert.h_argmin);
  j["exhaustive"] = cert.exhaustive;
  j["expansion_lower"] = rat_str(cert.expansion_lower);
  j["h_edges"] = cert.h.edge_count();
  return j;
}

Json to_json(const cm::GameResult &game) {
  Json j;
  j["found_cut"] = game.found_cut;
  j["kind"] = game.kind == cm::GameKind::Edge ? "edge" : "vertex";
  if (game.found_cut) {
    if (game.kind == cm::GameKind::Edge)
      j["cut"] = to_json(game.cut);
    else
      j["cut"] = to_json(game.vertex_cut);
  } else {
    j["certificate"] = to_json(game.certificate);
  }
  Json trace = Json::array();
  for (const auto &rec : game.trace) {
    Json r;
    r["round"] = rec.round;
    r["psi"] = rat_str(rec.psi);
    r["branch"] = rec.branch;
    Json pairs = Json::array();
    for (auto [a, b] : rec.pair_sizes) pairs.push_back(Json::array({a, b}));
    r["pair_sizes"] = pairs;
    r["matching_sizes"] = rec.matching_sizes;
    r["telemetry"] =
        Json{{"potential_float", rec.potential}, {"increase_float", rec.potential_increase}};
    trace.push_back(r);
  }
  j["trace"] = trace;
  return j;
}

Json to_json(const pipe::ApproxResult &res) {
  Json j;
  switch (res.status) {
    case pipe::Status::Found: j["status"] = "found"; break;
    case pipe::Status::NoSuchSet: j["status"] = "no-such-set"; break;
    case pipe::Status::RandomizedFailure: j["status"] = "randomized-failure"; break;
  }
  j["seed"] = res.seed;
  if (res.status == pipe::Status::Found) {
    if (res.vertex)
      j["cut"] = to_json(res.vertex_cut);
    else
      j["cut"] = to_json(res.cut);
  }
  Json claims = Json::array();
  for (const auto &c : res.claims)
    claims.push_back(Json{{"name", c.name},
                          {"bound", c.bound},
                          {"measured", c.measured},
                          {"holds", c.holds}});
  j["claims"] = claims;
  if (res.certificate_lower > Rat(0)) j["certificate_lower"] = rat_str(res.certificate_lower);
  if (!res.note.empty()) j["note"] = res.note;
  Json transcript = Json::array();
  for (const auto &rec : res.transcript) {
    Json r;
    if (rec.k) r["k"] = rec.k;
    if (rec.s) r["s"] = rec.s;
    if (rec.ell) r["ell"] = rec.ell;
    if (rec.phi != Rat(0)) r["phi"] = rat_str(rec.phi);
    if (rec.lp_value != 0) r["telemetry"] = Json{{"lp_value_float", rec.lp_value}};
    r["outcome"] = rec.outcome;
    transcript.push_back(r);
  }
  j["transcript"] = transcript;
  if (res.ratio_bound != 0)
    j["telemetry"] = Json{{"ratio_bound_float", res.ratio_bound}};
  return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace io
}  // namespace parcut
