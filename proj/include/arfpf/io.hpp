#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "arfpf/engine.hpp"
#include "arfpf/graph.hpp"
#include "arfpf/surface.hpp"

namespace arfpf {

struct EmbeddedGraph {
  Multigraph graph;
  RotationSystem rotation;

  friend bool operator==(const EmbeddedGraph&, const EmbeddedGraph&) = default;
};

// Line-oriented format:
//   V <n>
//   E <id> <u> <v>        half A at u, half B at v
//   R <v>: <h> <h> ...    half-edge tokens "<edge>a" / "<edge>b"
// Blank lines and lines starting with '#' are skipped. Vertices of degree
// zero may omit their R line.
EmbeddedGraph parse_graph(std::istream& in);
EmbeddedGraph parse_graph_text(const std::string& text);
EmbeddedGraph read_graph_file(const std::string& path);
std::string serialize_graph(const EmbeddedGraph& eg);

std::string half_edge_token(int h);

// {"<edge id>": "p/q", ...}; integers are accepted as numbers too.
VectorX<Rational> parse_weights(const nlohmann::json& doc, int edge_count);
VectorX<Rational> read_weights_file(const std::string& path, int edge_count);
nlohmann::json weights_to_json(const VectorX<Rational>& w);

template <typename Scalar>
nlohmann::json report_to_json(const EvaluationReport<Scalar>& report, bool timing) {
  nlohmann::json j;
  j["value"] = format_scalar(report.value);
  j["genus"] = report.genus;
  j["family_size"] = report.family_size;
  j["pfaffians"] = report.pfaffians;
  j["epsilon0"] = report.epsilon0;
  j["certified"] = to_string(report.mode);
  if (timing) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& p : report.timing) t[p.phase + "_ms"] = p.milliseconds;
    j["timing"] = t;
  }
  return j;
}

nlohmann::json family_to_json(const PreparedFamily& prepared);
nlohmann::json verify_to_json(const VerifyReport& report);
nlohmann::json optimality_to_json(const OptimalityReport& report);

}  // namespace arfpf
