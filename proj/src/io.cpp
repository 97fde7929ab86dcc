#include "arfpf/io.hpp"

#include <fstream>
#include <sstream>

namespace arfpf {

namespace {

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& token, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    fail_at(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size() || value < 0) fail_at(line, "expected a nonnegative integer, got '" + token + "'");
  return value;
}

int parse_half_edge(const std::string& token, int edge_count, int line) {
  if (token.size() < 2 || (token.back() != 'a' && token.back() != 'b'))
    fail_at(line, "bad half-edge token '" + token + "'");
  const int e = parse_int(token.substr(0, token.size() - 1), line);
  if (e >= edge_count) fail_at(line, "half-edge token '" + token + "' names unknown edge " + std::to_string(e));
  return half_edge(e, token.back() == 'b' ? 1 : 0);
}

}  // namespace

std::string half_edge_token(int h) { return std::to_string(edge_of(h)) + (side_of(h) ? "b" : "a"); }

EmbeddedGraph parse_graph(std::istream& in) {
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, std::vector<std::string>>> rotation_lines;  // (line, tokens incl. vertex)
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ls(text);
    std::string section;
    if (!(ls >> section) || section[0] == '#') continue;
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (section == "V") {
      if (n >= 0) fail_at(line, "duplicate V section");
      if (tokens.size() != 1) fail_at(line, "V takes one vertex count");
      n = parse_int(tokens[0], line);
    } else if (section == "E") {
      if (n < 0) fail_at(line, "E before V");
      if (tokens.size() != 3) fail_at(line, "E takes an id and two endpoints");
      const int id = parse_int(tokens[0], line);
      if (id != static_cast<int>(edges.size()))
        fail_at(line, "edge id " + std::to_string(id) + " out of sequence, expected " + std::to_string(edges.size()));
      const int u = parse_int(tokens[1], line);
      const int v = parse_int(tokens[2], line);
      if (u >= n || v >= n) fail_at(line, "edge " + std::to_string(id) + " has an endpoint outside 0.." + std::to_string(n - 1));
      edges.emplace_back(u, v);
    } else if (section == "R") {
      if (tokens.empty() || tokens[0].back() != ':') fail_at(line, "R expects '<vertex>:'");
      rotation_lines.emplace_back(line, std::move(tokens));
    } else {
      fail_at(line, "unknown section '" + section + "'");
    }
  }
  if (n < 0) throw InputError("missing V section");

  EmbeddedGraph eg;
  eg.graph = Multigraph(n, edges);
  const int m = eg.graph.edge_count();
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (auto& [at, tokens] : rotation_lines) {
    const int v = parse_int(tokens[0].substr(0, tokens[0].size() - 1), at);
    if (v >= n) fail_at(at, "rotation for unknown vertex " + std::to_string(v));
    if (seen[v]) fail_at(at, "second rotation for vertex " + std::to_string(v));
    seen[v] = 1;
    for (std::size_t i = 1; i < tokens.size(); ++i) orders[v].push_back(parse_half_edge(tokens[i], m, at));
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v] && eg.graph.degree(v) > 0) throw StructuralError("vertex " + std::to_string(v) + " has no rotation");
  eg.rotation = RotationSystem(std::move(orders));
  eg.rotation.validate(eg.graph);
  return eg;
}

EmbeddedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

EmbeddedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  try {
    return parse_graph(in);
  } catch (const StructuralError& e) {
    throw StructuralError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize_graph(const EmbeddedGraph& eg) {
  std::ostringstream out;
  const Multigraph& g = eg.graph;
  out << "V " << g.vertex_count() << '\n';
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.ends(e);
    out << "E " << e << ' ' << u << ' ' << v << '\n';
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << "R " << v << ':';
    for (int h : eg.rotation.at(v)) out << ' ' << half_edge_token(h);
    out << '\n';
  }
  return out.str();
}

VectorX<Rational> parse_weights(const nlohmann::json& doc, int edge_count) {
  if (!doc.is_object()) throw InputError("weights must be a JSON object keyed by edge id");
  VectorX<Rational> w(edge_count);
  std::vector<char> given(static_cast<std::size_t>(edge_count), 0);
  for (const auto& [key, value] : doc.items()) {
    std::size_t used = 0;
    int e = -1;
    try {
      e = std::stoi(key, &used);
    } catch (const std::exception&) {
    }
    if (e < 0 || used != key.size()) throw InputError("weight key '" + key + "' is not an edge id");
    if (e >= edge_count) throw InputError("weight supplied for unknown edge " + key);
    if (value.is_string()) {
      w[e] = parse_rational(value.get<std::string>());
    } else if (value.is_number_integer()) {
      w[e] = Rational(value.get<long long>());
    } else {
      throw InputError("weight for edge " + key + " must be a fraction string or an integer");
    }
    given[e] = 1;
  }
  for (int e = 0; e < edge_count; ++e)
    if (!given[e]) throw InputError("missing weight for edge " + std::to_string(e));
  return w;
}

VectorX<Rational> read_weights_file(const std::string& path, int edge_count) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open weights file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_weights(doc, edge_count);
}

nlohmann::json weights_to_json(const VectorX<Rational>& w) {
  nlohmann::json j = nlohmann::json::object();
  for (Eigen::Index e = 0; e < w.size(); ++e) j[std::to_string(e)] = format_rational(w[e]);
  return j;
}

nlohmann::json family_to_json(const PreparedFamily& prepared) {
  nlohmann::json j;
  j["genus"] = prepared.genus;
  j["family_size"] = prepared.family_size();
  j["epsilon0"] = prepared.epsilon0;
  j["certified"] = to_string(prepared.mode);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& pc : prepared.components) {
    const auto& f = pc.family;
    const auto& global = pc.component.edges;
    auto to_global = [&](const EdgeSubset& s) {
      std::vector<int> ids;
      for (int e : s.indices())
        if (e < f.host_edge_count) ids.push_back(global[e]);
      return ids;
    };
    nlohmann::json c;
    c["vertices"] = pc.component.vertices;
    c["edges"] = global;
    c["genus"] = f.genus;
    c["epsilon0"] = f.epsilon0;
    c["base_form"] = f.base_form.values.to_string();
    c["base_reversed"] = to_global(f.base);
    nlohmann::json members = nlohmann::json::array();
    for (const auto& member : f.members) {
      nlohmann::json mj;
      mj["form"] = member.form.values.to_string();
      mj["arf"] = member.arf ? 1 : 0;
      mj["flips"] = to_global(member.flips);
      mj["alpha"] = format_rational(member.alpha);
      members.push_back(std::move(mj));
    }
    c["members"] = std::move(members);
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j;
}

nlohmann::json verify_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["trials"] = report.trials;
  j["passed"] = report.passed;
  j["checked_matching"] = report.checked_matching;
  j["checked_ising"] = report.checked_ising;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"trial", f.trial},
                        {"check", f.check},
                        {"expected", f.expected},
                        {"actual", f.actual},
                        {"weights", f.weights}});
  }
  j["failures"] = std::move(failures);
  return j;
}

nlohmann::json optimality_to_json(const OptimalityReport& report) {
  return {{"genus", report.genus},
          {"family_size", report.family_size},
          {"rank", report.rank},
          {"lower_bound", report.lower_bound},
          {"orthogonal", report.orthogonal},
          {"signs_match", report.signs_match}};
}

}  // namespace arfpf
