// Command-line front end: reads a graph file with its rotation system and
// prints JSON. Exit codes: 0 success, 1 verification failure or internal
// invariant violation, 2 input error, 3 capacity exceeded.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "arfpf/engine.hpp"
#include "arfpf/errors.hpp"
#include "arfpf/io.hpp"

namespace {

using namespace arfpf;
using nlohmann::json;

struct WeightOptions {
  std::string weights;
  bool all_ones = false;
};

void add_weight_options(CLI::App* cmd, WeightOptions& opts, const std::string& flag = "--weights") {
  auto* w = cmd->add_option(flag, opts.weights, "JSON object mapping edge ids to \"p/q\"");
  auto* ones = cmd->add_flag("--all-ones", opts.all_ones, "every edge weight 1");
  w->excludes(ones);
}

VectorX<Rational> load_weights(const WeightOptions& opts, const Multigraph& g, const std::string& flag = "--weights") {
  if (opts.all_ones) return VectorX<Rational>::Constant(g.edge_count(), Rational(1));
  if (opts.weights.empty()) {
    if (g.edge_count() == 0) return VectorX<Rational>(0);
    throw InputError("missing weight for edge 0 (pass " + flag + " or --all-ones)");
  }
  return read_weights_file(opts.weights, g.edge_count());
}

VectorX<double> to_double(const VectorX<Rational>& w) {
  VectorX<double> out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out[i] = w[i].convert_to<double>();
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even-subgraph, Ising and matching polynomials of embedded graphs via Pfaffian families"};
  app.require_subcommand(1);

  std::string file;
  std::string mode_text = "quadratic";
  WeightOptions weights;
  bool use_float = false;
  bool no_timing = false;
  int jobs = 1;
  int trials = 20;
  std::uint64_t seed = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t limit = 1'000'000;
  std::string out_path;

  auto* genus = app.add_subcommand("genus", "faces, components and genus of the embedding");
  genus->add_option("file", file)->required();

  auto* evenpoly = app.add_subcommand("evenpoly", "even-subgraph polynomial at given weights");
  evenpoly->add_option("file", file)->required();
  add_weight_options(evenpoly, weights);
  evenpoly->add_option("--mode", mode_text, "sign fit: quadratic or exhaustive");
  evenpoly->add_option("--seed", seed, "accepted for interface symmetry; evaluation is deterministic");
  evenpoly->add_flag("--float", use_float, "double precision Pfaffians");
  evenpoly->add_flag("--no-timing", no_timing, "omit timing fields");
  evenpoly->add_option("--jobs", jobs, "threads for the Pfaffians")->check(CLI::PositiveNumber);

  WeightOptions couplings;
  auto* ising = app.add_subcommand("ising", "Ising partition function at couplings x");
  ising->add_option("file", file)->required();
  add_weight_options(ising, couplings, "--x");

  auto* matchpoly = app.add_subcommand("matchpoly", "perfect matching polynomial at given weights");
  matchpoly->add_option("file", file)->required();
  add_weight_options(matchpoly, weights);
  matchpoly->add_option("--cap", cap, "maximum number of perfect matchings used as constraints");
  matchpoly->add_flag("--float", use_float, "double precision Pfaffians");
  matchpoly->add_flag("--no-timing", no_timing, "omit timing fields");

  auto* verify_cmd = app.add_subcommand("verify", "compare against brute-force sums on random rational weights");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--mode", mode_text, "sign fit: quadratic or exhaustive");

  auto* optimality = app.add_subcommand("optimality", "rank certificate for the size of the family");
  optimality->add_option("file", file)->required();

  auto* family = app.add_subcommand("family", "export the fitted Pfaffian family");
  family->add_option("file", file)->required();
  family->add_option("--out", out_path, "write to this file instead of stdout");
  family->add_option("--mode", mode_text, "sign fit: quadratic or exhaustive");

  auto* mingenus = app.add_subcommand("mingenus", "exhaustive search for a minimum-genus rotation");
  mingenus->add_option("file", file)->required();
  mingenus->add_option("--limit", limit, "maximum rotation systems examined");

  CLI11_PARSE(app, argc, argv);

  try {
    const EmbeddedGraph eg = read_graph_file(file);
    const Multigraph& g = eg.graph;
    const RotationSystem& rot = eg.rotation;
    const FitMode mode = parse_fit_mode(mode_text);

    if (genus->parsed()) {
      const FaceStructure fs = trace_faces(g, rot);
      emit({{"genus", fs.genus}, {"faces", fs.face_count()}, {"components", fs.components}});
    } else if (evenpoly->parsed()) {
      const auto w = load_weights(weights, g);
      if (use_float) {
        emit(report_to_json(even_poly<double>(g, rot, to_double(w), mode, jobs), !no_timing));
      } else {
        emit(report_to_json(even_poly<Rational>(g, rot, w, mode, jobs), !no_timing));
      }
    } else if (ising->parsed()) {
      const auto x = load_weights(couplings, g, "--x");
      emit({{"value", format_rational(ising_partition(g, rot, x))}, {"genus", genus_of(g, rot)}});
    } else if (matchpoly->parsed()) {
      const auto w = load_weights(weights, g);
      json j = use_float ? report_to_json(matching_poly<double>(g, rot, to_double(w), cap), !no_timing)
                         : report_to_json(matching_poly<Rational>(g, rot, w, cap), !no_timing);
      if (j["pfaffians"] == 0) j["note"] = "no perfect matching; empty family";
      emit(j);
    } else if (verify_cmd->parsed()) {
      VerifyOptions options;
      options.trials = trials;
      options.seed = seed;
      options.mode = mode;
      const VerifyReport report = verify(g, rot, options);
      emit(verify_to_json(report));
      return report.ok() ? 0 : 1;
    } else if (optimality->parsed()) {
      emit(optimality_to_json(optimality_certificate(g, rot)));
    } else if (family->parsed()) {
      const json j = family_to_json(prepare_even_poly(g, rot, mode));
      if (out_path.empty()) {
        emit(j);
      } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write '" + out_path + "'");
        out << j.dump(2) << '\n';
      }
    } else if (mingenus->parsed()) {
      const RotationSystem best = minimum_genus_rotation(g, limit);
      const int min_genus = genus_of(g, best);
      emit({{"genus", min_genus},
            {"given_genus", genus_of(g, rot)},
            {"given_is_minimal", genus_of(g, rot) == min_genus},
            {"rotation_systems", rotation_system_count(g)},
            {"graph", serialize_graph({g, best})}});
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
