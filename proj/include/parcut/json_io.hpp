#pragma once

#include <json.hpp>

#include "parcut/cut_matching.hpp"
#include "parcut/graph.hpp"
#include "parcut/oracle.hpp"
#include "parcut/pipelines.hpp"

namespace parcut {
namespace io {

// Deterministic JSON rendering: insertion-ordered objects, rationals as
// exact "p/q" strings, floating point confined to tagged telemetry fields.
using Json = nlohmann::ordered_json;

Json to_json(const EdgeCut &cut);
Json to_json(const VertexCut &cut);
Json to_json(const oracle::OracleAnswer &ans);
Json to_json(const cm::Certificate &cert);
Json to_json(const cm::GameResult &game);
Json to_json(const pipe::ApproxResult &res);

std::string dump(const Json &j);

}  // namespace io
}  // namespace parcut
