#include "amen/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amen/amenability.hpp"
#include "amen/generators.hpp"
#include "amen/graph_io.hpp"
#include "amen/oracle.hpp"
#include "amen/refinement.hpp"
#include "amen/serialize.hpp"
#include "amen/symmetry.hpp"

namespace amen::cli {

namespace {

using nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "IOError"; }
};

struct Config {
  std::string format;  // "", "edgelist" or "graph6"
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<int> max_oracle_n;
  bool exact_counts = false;
  bool components = false;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  Config cfg;

  std::string read_text(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
      buf << in_.rdbuf();
      return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    buf << f.rdbuf();
    return buf.str();
  }

  GraphFormat input_format(const std::string& path) const {
    if (cfg.format == "graph6") return GraphFormat::Graph6;
    if (cfg.format == "edgelist") return GraphFormat::EdgeList;
    return path == "-" ? GraphFormat::EdgeList : format_from_path(path);
  }

  Graph load(const std::string& path) { return parse_graph(read_text(path), input_format(path)); }

  void emit(const json& j) { out_ << j.dump(2) << '\n'; }

  int refine(const std::string& path) {
    const Partition p = stable_partition(load(path));
    if (cfg.json) return emit(partition_json(p)), 0;
    for (int i = 0; i < p.num_cells(); ++i) {
      const char* sep = "";
      for (Vertex v : p.cell(i)) out_ << sep << v, sep = " ";
      out_ << '\n';
    }
    return 0;
  }

  int cells(const std::string& path) {
    const Graph g = load(path);
    const CellGraph cg = build_cell_graph(g, stable_partition(g));
    emit(cells_json(cg, analyze_anisotropic(cg)));
    return 0;
  }

  int amenable(const std::string& path) {
    const AmenabilityVerdict v = check_amenable(load(path));
    if (cfg.json) return emit(verdict_json(v)), 0;
    if (v.amenable) {
      out_ << "amenable (" << v.structure->forest.components.size() << " components)\n";
    } else {
      const AmenabilityFailure& f = *v.failure;
      out_ << "not amenable: condition " << to_string(f.condition) << " (" << f.reason;
      if (f.cell >= 0) out_ << ", cell " << f.cell;
      if (f.other >= 0) out_ << ", cell " << f.other;
      if (f.component >= 0) out_ << ", component " << f.component;
      out_ << ")\n";
    }
    return 0;
  }

  int symmetry(const std::string& path, bool dist) {
    const SymmetryReport r = symmetry_report(load(path), SymmetryOptions{cfg.exact_counts});
    if (cfg.json) return emit(report_json(r)), 0;
    if (cfg.components) {
      for (const ComponentReport& c : r.components) {
        out_ << "component cell=" << c.first_cell << " root=" << c.root_cell << " cells=" << c.num_cells
             << " n=" << c.num_vertices << " head=" << to_string(c.head.kind) << '(' << c.head.size << ')'
             << " head_dist=" << c.head_invariants.dist << " head_fix=" << c.head_invariants.fix
             << " leg_fix=" << c.leg_fix << " dist=" << c.dist << " fix=" << c.fix;
        if (c.exact_leg_count) out_ << " leg_count=" << *c.exact_leg_count;
        out_ << '\n';
      }
    }
    out_ << (dist ? r.dist_number : r.fix_number) << '\n';
    return 0;
  }

  int iso(const std::string& a, const std::string& b) {
    const IsoAnswer ans = amenable_iso(load(a), load(b));
    if (cfg.json) return emit({{"answer", to_string(ans)}}), 0;
    out_ << to_string(ans) << '\n';
    return 0;
  }

  int oracle(const std::string& op, const std::string& path, const std::string& second, int colors,
             bool cell_preserving) {
    const Graph g = load(path);
    std::optional<Partition> p;
    if (cell_preserving) p = stable_partition(g);
    const Partition* pp = p ? &*p : nullptr;
    auto limit = [&](int fallback) { return cfg.max_oracle_n.value_or(fallback); };
    json result{{"op", op}, {"n", g.order()}};
    if (op == "aut") {
      const BigInt order = oracle::automorphism_count(g, pp, limit(oracle::kDefaultAutLimit));
      result["order"] = order.str();
    } else if (op == "dist") {
      result["value"] = oracle::dist_number_bf(g, pp, limit(oracle::kDefaultColoringLimit));
    } else if (op == "fix") {
      result["value"] = oracle::fix_number_bf(g, pp, limit(oracle::kDefaultColoringLimit));
    } else if (op == "count") {
      if (colors < 1) throw TaggedError("BadArgument", "count needs --colors >= 1");
      result["colors"] = colors;
      result["value"] = oracle::dist_count_bf(g, pp, colors, limit(oracle::kDefaultColoringLimit)).str();
    } else if (op == "iso") {
      if (second.empty()) throw TaggedError("BadArgument", "iso needs a second graph");
      result["value"] = oracle::isomorphic(g, load(second), limit(oracle::kDefaultAutLimit));
    } else {
      throw TaggedError("BadArgument", "unknown oracle op '" + op + "'");
    }
    if (cfg.json) return emit(result), 0;
    if (result.contains("order")) out_ << result["order"].get<std::string>() << '\n';
    else if (result["value"].is_boolean()) out_ << (result["value"].get<bool>() ? "true" : "false") << '\n';
    else if (result["value"].is_string()) out_ << result["value"].get<std::string>() << '\n';
    else out_ << result["value"].dump() << '\n';
    return 0;
  }

  int gen(const std::string& spec_path, const std::string& family, const std::vector<std::int64_t>& params,
          std::optional<int> random_n, std::optional<std::int64_t> scaling_n) {
    const int chosen = !spec_path.empty() + !family.empty() + random_n.has_value() + scaling_n.has_value();
    if (chosen != 1) throw TaggedError("BadArgument", "gen needs exactly one of --spec, --named, --random, --scaling");
    Graph g;
    if (!spec_path.empty()) {
      json j;
      try {
        j = json::parse(read_text(spec_path));
      } catch (const json::parse_error& e) {
        throw TaggedError("BadSpec", std::string("spec is not valid JSON: ") + e.what());
      }
      g = gen::generate(gen::spec_from_json(j), cfg.seed).graph;
    } else if (!family.empty()) {
      g = gen::named(gen::family_from_string(family), params);
    } else if (random_n) {
      g = gen::random_amenable(*random_n, gen::ShapeParams{}, cfg.seed).graph;
    } else {
      g = gen::scaling_family(*scaling_n, cfg.seed).graph;
    }
    if (cfg.format == "graph6") out_ << encode_graph6(g) << '\n';
    else out_ << write_edge_list(g);
    return 0;
  }

  int bench(const std::vector<std::int64_t>& sizes, int repeat) {
    if (repeat < 1) throw TaggedError("BadArgument", "--repeat must be positive");
    using clock = std::chrono::steady_clock;
    out_ << "n,m,generate_ms,dist_ms,fix_ms,total_ms\n";
    double previous = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const auto t0 = clock::now();
      const gen::RandomInstance inst = gen::scaling_family(sizes[k], cfg.seed);
      const double gen_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      double best_dist = 1e300, best_fix = 1e300;
      for (int r = 0; r < repeat; ++r) {
        auto a = clock::now();
        volatile std::int64_t d = dist_number(inst.graph);
        auto b = clock::now();
        volatile std::int64_t f = fix_number(inst.graph);
        auto c = clock::now();
        (void)d, (void)f;
        best_dist = std::min(best_dist, std::chrono::duration<double, std::milli>(b - a).count());
        best_fix = std::min(best_fix, std::chrono::duration<double, std::milli>(c - b).count());
      }
      const double total = best_dist + best_fix;
      out_ << inst.graph.order() << ',' << inst.graph.size() << ',' << gen_ms << ',' << best_dist << ','
           << best_fix << ',' << total << '\n';
      err_ << "n=" << inst.graph.order() << " m=" << inst.graph.size() << " dist+fix " << total << " ms";
      if (k > 0 && previous > 0) err_ << " ratio " << total / previous;
      err_ << '\n';
      previous = total;
    }
    return 0;
  }

  int fail(const Error& e, int code) {
    if (cfg.json) out_ << error_json(e).dump(2) << '\n';
    else err_ << "error: " << e.kind() << ": " << e.what() << '\n';
    return code;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Runner runner(in, out, err);
  Config& cfg = runner.cfg;

  CLI::App app{"Color refinement, amenability, distinguishing and fixing numbers", "amen"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Graph format (default: from file extension)")
      ->check(CLI::IsMember({"edgelist", "graph6"}));
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--max-oracle-n", cfg.max_oracle_n, "Vertex limit for brute-force oracles");
  app.add_flag("--exact-counts", cfg.exact_counts, "Exact big-integer leg counts");
  app.add_flag("--components", cfg.components, "Per-component breakdown");

  std::string file, file2, op, spec_path, family;
  std::vector<std::int64_t> params, sizes{10000, 20000, 40000, 80000, 160000};
  std::optional<int> random_n;
  std::optional<std::int64_t> scaling_n;
  int colors = 0, repeat = 3;
  bool cell_preserving = false;

  auto* refine = app.add_subcommand("refine", "Stable partition");
  refine->add_option("file", file, "Graph file or -")->required();
  auto* cells = app.add_subcommand("cells", "Cell graph and anisotropic forest as JSON");
  cells->add_option("file", file)->required();
  auto* amen_cmd = app.add_subcommand("amenable", "Amenability verdict");
  amen_cmd->add_option("file", file)->required();
  auto* dist = app.add_subcommand("dist", "Distinguishing number of an amenable graph");
  dist->add_option("file", file)->required();
  auto* fix = app.add_subcommand("fix", "Fixing number of an amenable graph");
  fix->add_option("file", file)->required();
  auto* iso = app.add_subcommand("iso", "Isomorphism via color refinement");
  iso->add_option("first", file)->required();
  iso->add_option("second", file2)->required();
  auto* orc = app.add_subcommand("oracle", "Brute-force oracles: aut, dist, fix, count, iso");
  orc->add_option("op", op)->required()->check(CLI::IsMember({"aut", "dist", "fix", "count", "iso"}));
  orc->add_option("file", file)->required();
  orc->add_option("second", file2, "Second graph for iso");
  orc->add_option("--colors,-c", colors, "Color count for count");
  orc->add_flag("--cells", cell_preserving, "Restrict to automorphisms preserving the stable partition");
  auto* gen_cmd = app.add_subcommand("gen", "Emit a generated graph");
  gen_cmd->add_option("--spec", spec_path, "GraphSpec JSON file");
  gen_cmd->add_option("--named", family, "K, P, C, Kab, rK2, figure1, jellyfish_fig3, figure5");
  gen_cmd->add_option("--param,-p", params, "Family parameters");
  gen_cmd->add_option("--random", random_n, "Random amenable graph with at most N vertices");
  gen_cmd->add_option("--scaling", scaling_n, "Benchmark family instance near N vertices");
  auto* bench = app.add_subcommand("bench", "Timing table for the scaling family (CSV on stdout)");
  bench->add_option("--sizes", sizes, "Target vertex counts")->delimiter(',');
  bench->add_option("--repeat", repeat, "Runs per size; the minimum is reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    if (code == 0) return 0;
    if (cfg.json) out << error_json("Usage", e.what()).dump(2) << '\n';
    else err << cli_err.str();
    return 1;
  }

  try {
    if (*refine) return runner.refine(file);
    if (*cells) return runner.cells(file);
    if (*amen_cmd) return runner.amenable(file);
    if (*dist) return runner.symmetry(file, true);
    if (*fix) return runner.symmetry(file, false);
    if (*iso) return runner.iso(file, file2);
    if (*orc) return runner.oracle(op, file, file2, colors, cell_preserving);
    if (*gen_cmd) return runner.gen(spec_path, family, params, random_n, scaling_n);
    if (*bench) return runner.bench(sizes, repeat);
  } catch (const NotAmenable& e) {
    return runner.fail(e, 2);
  } catch (const TooLarge& e) {
    return runner.fail(e, 2);
  } catch (const Error& e) {
    return runner.fail(e, 1);
  }
  return 1;
}

}  // namespace amen::cli
