#include "esc/query.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "esc/expanding.hpp"
#include "esc/oracle.hpp"
#include "esc/peeling.hpp"

namespace esc {

using ojson = nlohmann::ordered_json;

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Peel: return "peel";
    case Algorithm::Expand: return "expand";
    case Algorithm::Oracle: return "oracle";
    case Algorithm::Auto: return "auto";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Peel, Algorithm::Expand, Algorithm::Oracle, Algorithm::Auto})
    if (to_string(a) == name) return a;
  throw DomainError("unknown algorithm '" + std::string(name) + "'");
}

VertexRef parse_query(const BipartiteGraph& g, std::string_view text) {
  if (text.size() < 3 || text[1] != ':' || (text[0] != 'u' && text[0] != 'l'))
    throw DomainError("query must look like u:<label> or l:<label>, got '" + std::string(text) + "'");
  const Layer layer = text[0] == 'u' ? Layer::Upper : Layer::Lower;
  const std::string label(text.substr(2));
  auto ref = g.find_vertex(layer, label);
  if (!ref)
    throw DomainError("unknown " + std::string(layer == Layer::Upper ? "upper" : "lower") +
                      " vertex label '" + label + "'");
  return *ref;
}

std::string format_query(const BipartiteGraph& g, VertexRef q) {
  return std::string(q.layer == Layer::Upper ? "u:" : "l:") + g.label(q);
}

Algorithm choose_family(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q) {
  double above = 0;
  for (std::size_t i = 0; i < g.dims(); ++i) {
    const auto ub = query_upper_bound(g, q, c, i);
    if (!ub) return Algorithm::Peel;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.attr(e, i) >= *ub) above += 1;
  }
  above /= static_cast<double>(g.dims());
  return 2 * above < static_cast<double>(g.edge_count()) ? Algorithm::Expand : Algorithm::Peel;
}

QueryResult run_query(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q, Algorithm algo,
                      PruningOptions pruning, bool materialize, bool force_oracle) {
  if (!g.contains(q)) throw DomainError("query vertex out of range");
  QueryResult r;
  const auto t0 = std::chrono::steady_clock::now();
  r.algo = algo == Algorithm::Auto ? choose_family(g, c, q) : algo;
  QueryContext ctx(g, c, q, pruning);
  switch (r.algo) {
    case Algorithm::Peel: r.skyline = peel_skyline(ctx); break;
    case Algorithm::Expand: r.skyline = expand_skyline(ctx); break;
    default: r.skyline = oracle_skyline(g, c, q, force_oracle); break;
  }
  if (materialize)
    for (const auto& v : r.skyline) r.communities.push_back(*materialize_community(g, c, q, v));
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.stats = ctx.stats;
  return r;
}

namespace {

ojson number(Attr x) {
  if (std::abs(x) < 9e15 && x == std::floor(x)) return static_cast<std::int64_t>(x);
  return x;
}

}  // namespace

void write_result_doc(std::ostream& out, const BipartiteGraph& g, const DocHeader& header,
                      const QueryResult& result, bool with_timing) {
  ojson head;
  head["graph"] = header.graph;
  head["n"] = g.vertex_count();
  head["m"] = g.edge_count();
  head["d"] = g.dims();
  head["alpha"] = header.constraint.alpha;
  head["beta"] = header.constraint.beta;
  head["query"] = header.query;
  head["algo"] = to_string(result.algo);
  head["seed"] = header.seed ? ojson(*header.seed) : ojson(nullptr);
  out << head.dump() << '\n';

  const auto& ms = result.skyline.members();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    ojson rec;
    rec["significance"] = ojson::array();
    for (Attr x : ms[i].values()) rec["significance"].push_back(number(x));
    if (i < result.communities.size()) {
      const auto& comm = result.communities[i];
      ojson cj;
      cj["upper"] = ojson::array();
      cj["lower"] = ojson::array();
      cj["edges"] = ojson::array();
      for (auto u : comm.upper_vertices) cj["upper"].push_back(g.label(VertexRef{Layer::Upper, u}));
      for (auto l : comm.lower_vertices) cj["lower"].push_back(g.label(VertexRef{Layer::Lower, l}));
      for (EdgeId e : comm.edges)
        cj["edges"].push_back({g.label(VertexRef{Layer::Upper, g.endpoints(e).upper}),
                               g.label(VertexRef{Layer::Lower, g.endpoints(e).lower})});
      rec["community"] = std::move(cj);
    }
    out << rec.dump() << '\n';
  }

  ojson stats;
  stats["runtime_ms"] = with_timing ? ojson(result.runtime_ms) : ojson(nullptr);
  stats["iterations"] = result.stats.iterations;
  stats["cores_computed"] = result.stats.cores_computed;
  out << stats.dump() << '\n';
}

std::vector<VertexRef> pick_queries(const BipartiteGraph& g, const DegreeConstraint& c, std::size_t count,
                                    std::uint64_t seed) {
  WorkingGraph core(g, true);
  reduce_to_core(core, c);
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (core.degree(v) > 0) pool.push_back(v);
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  std::vector<VertexRef> out;
  for (VertexId v : pool) out.push_back(g.vertex_ref(v));
  return out;
}

std::vector<BenchRow> run_bench(const BipartiteGraph& g, const BenchConfig& config) {
  const std::size_t max_d = *std::max_element(config.dims.begin(), config.dims.end());
  if (max_d > g.dims()) throw DomainError("bench dimension exceeds graph dimensionality");
  std::vector<BenchRow> rows;
  for (double sigma : config.sigmas) {
    const BipartiteGraph sampled = sigma >= 1.0 ? g : sample_edges(g, sigma, config.seed);
    for (std::size_t d : config.dims) {
      const BipartiteGraph gd = d == sampled.dims() ? sampled : sampled.project_dims(d);
      for (std::uint32_t alpha : config.alphas) {
        const DegreeConstraint c(alpha, config.beta);
        for (VertexRef q : pick_queries(gd, c, config.queries, config.seed)) {
          for (Algorithm algo : config.algos) {
            auto r = run_query(gd, c, q, algo, config.pruning);
            BenchRow row;
            row.dataset = config.dataset;
            row.d = d;
            row.alpha = alpha;
            row.beta = config.beta;
            row.sigma = sigma;
            row.algo = r.algo;
            row.query = format_query(gd, q);
            row.runtime_ms = r.runtime_ms;
            row.result_count = r.skyline.size();
            row.iterations = r.stats.iterations;
            row.skyline = std::move(r.skyline);
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

void write_bench_csv_header(std::ostream& out) {
  out << "dataset,d,alpha,beta,sigma,algo,query,runtime_ms,result_count,iterations\n";
}

void write_bench_csv_row(std::ostream& out, const BenchRow& row) {
  out << row.dataset << ',' << row.d << ',' << row.alpha << ',' << row.beta << ','
      << static_cast<int>(std::lround(row.sigma * 100)) << ',' << to_string(row.algo) << ',' << row.query
      << ',' << row.runtime_ms << ',' << row.result_count << ',' << row.iterations << '\n';
}

}  // namespace esc
