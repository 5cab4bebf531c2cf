// Command-line front end: generate, query, bench, verify.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 I/O or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "esc/expanding.hpp"
#include "esc/graph.hpp"
#include "esc/oracle.hpp"
#include "esc/peeling.hpp"
#include "esc/query.hpp"

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

esc::BipartiteGraph load_graph(const std::string& path, std::size_t dims) {
  auto g = esc::load_edge_list_file(path);
  if (dims == 0) return g;
  if (dims > g.dims())
    throw UsageError("--dims " + std::to_string(dims) + " exceeds the file's " + std::to_string(g.dims()) +
                     " attribute dimensions");
  return dims == g.dims() ? g : g.project_dims(dims);
}

/// Writes to `path`, or stdout for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  fn(out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

void print_summary(std::ostream& os, const esc::BipartiteGraph& g) {
  const auto s = g.degree_summary();
  os << "n=" << g.vertex_count() << " (upper " << g.upper_count() << ", lower " << g.lower_count() << ")"
     << " m=" << g.edge_count() << " d=" << g.dims() << "\n"
     << "max_upper_degree=" << s.max_upper << " max_lower_degree=" << s.max_lower
     << " avg_upper_degree=" << s.avg_upper << " avg_lower_degree=" << s.avg_lower << "\n";
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string from;
  bool random = false;
  std::size_t upper = 0, lower = 0, edges = 0;
  std::size_t dims = 1;
  double lo = 1, hi = 100;
  std::uint64_t seed = 1;
  std::string out = "-";
};

int cmd_generate(const GenerateArgs& a) {
  if (a.from.empty() == !a.random) throw UsageError("give exactly one of --from or --random");
  esc::Topology topo;
  if (a.random) {
    if (a.upper == 0 || a.lower == 0) throw UsageError("--random needs --upper and --lower > 0");
    if (a.edges > a.upper * a.lower) throw UsageError("--edges exceeds upper * lower");
    topo = esc::random_topology(a.upper, a.lower, a.edges, a.seed);
  } else {
    topo = esc::load_topology_file(a.from);
  }
  const auto g = esc::generate_attributes(topo, a.dims, a.lo, a.hi, a.seed);
  with_output(a.out, [&](std::ostream& os) { esc::write_edge_list(os, g); });
  print_summary(a.out == "-" ? std::cerr : std::cout, g);
  return kOk;
}

// ---- query ----------------------------------------------------------------

struct QueryArgs {
  std::string graph;
  std::uint32_t alpha = 2, beta = 2;
  std::string query;
  std::string algo = "auto";
  std::size_t dims = 0;
  bool materialize = false;
  bool no_timing = false;
  bool no_pruning = false;
  bool force = false;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
};

int cmd_query(const QueryArgs& a) {
  const esc::DegreeConstraint c(a.alpha, a.beta);
  const auto algo = esc::parse_algorithm(a.algo);
  const auto g = load_graph(a.graph, a.dims);
  const auto q = esc::parse_query(g, a.query);
  const auto pruning = a.no_pruning ? esc::PruningOptions::none() : esc::PruningOptions{};
  const auto r = esc::run_query(g, c, q, algo, pruning, a.materialize, a.force);
  const esc::DocHeader header{std::filesystem::path(a.graph).filename().string(), c,
                              esc::format_query(g, q), a.seed};
  with_output(a.out, [&](std::ostream& os) { esc::write_result_doc(os, g, header, r, !a.no_timing); });
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string graph;
  std::string dataset;
  std::vector<std::size_t> dims{3};
  std::vector<std::uint32_t> alphas{2};
  std::uint32_t beta = 2;
  std::vector<double> sigmas{100};
  std::vector<std::string> algos{"peel", "expand"};
  std::size_t queries = 20;
  std::uint64_t seed = 1;
  bool no_pruning = false;
  std::string out = "-";
};

int cmd_bench(const BenchArgs& a) {
  const auto g = esc::load_edge_list_file(a.graph);
  esc::BenchConfig cfg;
  cfg.dataset = a.dataset.empty() ? std::filesystem::path(a.graph).stem().string() : a.dataset;
  cfg.dims = a.dims;
  for (auto d : cfg.dims)
    if (d == 0 || d > g.dims())
      throw UsageError("--dims value " + std::to_string(d) + " outside 1.." + std::to_string(g.dims()));
  cfg.alphas = a.alphas;
  for (auto al : cfg.alphas) esc::DegreeConstraint(al, a.beta);
  cfg.beta = a.beta;
  cfg.sigmas.clear();
  for (double s : a.sigmas) {
    if (!(s > 0 && s <= 100)) throw UsageError("--sigma values are percentages in (0, 100]");
    cfg.sigmas.push_back(s / 100.0);
  }
  cfg.algos.clear();
  for (const auto& name : a.algos) cfg.algos.push_back(esc::parse_algorithm(name));
  cfg.queries = a.queries;
  cfg.seed = a.seed;
  if (a.no_pruning) cfg.pruning = esc::PruningOptions::none();

  const auto rows = esc::run_bench(g, cfg);
  with_output(a.out, [&](std::ostream& os) {
    esc::write_bench_csv_header(os);
    for (const auto& row : rows) esc::write_bench_csv_row(os, row);
  });
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string graph;
  std::uint32_t alpha = 2, beta = 2;
  std::string query;
  std::size_t dims = 0;
  bool force = false;
  bool corrupt = false;  // test hook: perturb the peeling result before checking
};

int cmd_verify(const VerifyArgs& a) {
  const esc::DegreeConstraint c(a.alpha, a.beta);
  const auto g = load_graph(a.graph, a.dims);
  const auto q = esc::parse_query(g, a.query);
  if (!a.force && !esc::within_oracle_limits(g))
    throw esc::OracleRefusal("refusing to verify: m=" + std::to_string(g.edge_count()) + ", d=" +
                             std::to_string(g.dims()) + " is beyond the exhaustive-check limits; use --force");

  bool ok = true;
  std::vector<esc::SignificanceVector> results[2];
  const esc::Algorithm families[2] = {esc::Algorithm::Peel, esc::Algorithm::Expand};
  for (int i = 0; i < 2; ++i) {
    auto r = esc::run_query(g, c, q, families[i]);
    results[i] = r.skyline.members();
    if (a.corrupt && i == 0) {
      if (results[i].empty())
        results[i].push_back(esc::SignificanceVector(g.dims(), 1));
      else
        results[i].front()[0] += 1;
    }
    const auto report = esc::verify_result(g, c, q, results[i], a.force);
    std::cout << esc::to_string(families[i]) << ": " << results[i].size() << " vectors, "
              << (report.ok() ? "ok" : "FAILED") << "\n";
    for (const auto& f : report.failures) std::cout << "  " << f << "\n";
    ok = ok && report.ok();
  }
  if (results[0] != results[1]) {
    std::cout << "peel and expand disagree\n";
    ok = false;
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-attributed skyline community search in bipartite graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write an edge list with synthetic attributes");
  g->add_option("--from", gen.from, "topology edge list (two labels per line)");
  g->add_flag("--random", gen.random, "random bipartite topology");
  g->add_option("--upper", gen.upper, "upper vertex count (with --random)");
  g->add_option("--lower", gen.lower, "lower vertex count (with --random)");
  g->add_option("--edges", gen.edges, "edge count (with --random)");
  g->add_option("--dims", gen.dims, "attribute dimensions")->check(CLI::PositiveNumber);
  g->add_option("--lo", gen.lo, "smallest attribute value");
  g->add_option("--hi", gen.hi, "largest attribute value");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("-o,--output", gen.out, "output path, - for stdout");

  QueryArgs qa;
  auto* q = app.add_subcommand("query", "compute all skyline communities of one query vertex");
  q->add_option("--graph", qa.graph, "edge-list file")->required();
  q->add_option("--alpha", qa.alpha, "upper-layer degree bound");
  q->add_option("--beta", qa.beta, "lower-layer degree bound");
  q->add_option("--query", qa.query, "query vertex as u:<label> or l:<label>")->required();
  q->add_option("--algo", qa.algo, "peel | expand | oracle | auto");
  q->add_option("--dims", qa.dims, "use only the first k attribute dimensions");
  q->add_flag("--materialize", qa.materialize, "include community membership per vector");
  q->add_flag("--no-timing", qa.no_timing, "write runtime as null (byte-stable output)");
  q->add_flag("--no-pruning", qa.no_pruning, "disable the result-neutral pruning rules");
  q->add_flag("--force", qa.force, "let the oracle run above its size limits");
  q->add_option("--seed", qa.seed, "seed recorded in the header");
  q->add_option("-o,--output", qa.out, "output path, - for stdout");

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "parameter sweeps over random queries, CSV output");
  b->add_option("--graph", ba.graph, "edge-list file")->required();
  b->add_option("--dataset", ba.dataset, "dataset name for the CSV (default: file stem)");
  b->add_option("--dims", ba.dims, "dimensions to sweep")->delimiter(',');
  b->add_option("--alpha", ba.alphas, "alpha values to sweep")->delimiter(',');
  b->add_option("--beta", ba.beta, "lower-layer degree bound");
  b->add_option("--sigma", ba.sigmas, "edge percentages to sweep")->delimiter(',');
  b->add_option("--algo", ba.algos, "families to run")->delimiter(',');
  b->add_option("--queries", ba.queries, "random query vertices per setting");
  b->add_option("--seed", ba.seed, "seed for sampling and query selection");
  b->add_flag("--no-pruning", ba.no_pruning, "disable the result-neutral pruning rules");
  b->add_option("-o,--output", ba.out, "output path, - for stdout");

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "check both families against exhaustive enumeration");
  v->add_option("--graph", va.graph, "edge-list file")->required();
  v->add_option("--alpha", va.alpha, "upper-layer degree bound");
  v->add_option("--beta", va.beta, "lower-layer degree bound");
  v->add_option("--query", va.query, "query vertex as u:<label> or l:<label>")->required();
  v->add_option("--dims", va.dims, "use only the first k attribute dimensions");
  v->add_flag("--force", va.force, "run even above the exhaustive-check limits");
  v->add_flag("--inject-corruption", va.corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*q) return cmd_query(qa);
    if (*b) return cmd_bench(ba);
    if (*v) return cmd_verify(va);
  } catch (const esc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const esc::ValidationError& e) {
    std::cerr << "invalid graph: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const esc::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const esc::OracleRefusal& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}
