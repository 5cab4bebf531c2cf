#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "esc/context.hpp"
#include "esc/core.hpp"
#include "esc/graph.hpp"
#include "esc/skyline.hpp"

namespace esc {

enum class Algorithm { Peel, Expand, Oracle, Auto };

std::string_view to_string(Algorithm a);
/// "peel" | "expand" | "oracle" | "auto"; throws DomainError otherwise.
Algorithm parse_algorithm(std::string_view name);

/// "u:<label>" or "l:<label>". Throws DomainError naming the label when it is unknown.
VertexRef parse_query(const BipartiteGraph& g, std::string_view text);
std::string format_query(const BipartiteGraph& g, VertexRef q);

/// Family used by Auto: expanding when the edges at or above the query's per-dimension
/// upper bounds are, on average over dimensions, fewer than half of m; peeling otherwise.
Algorithm choose_family(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q);

struct QueryResult {
  Algorithm algo = Algorithm::Peel;  ///< resolved family (never Auto)
  SkylineSet skyline;
  std::vector<Community> communities;  ///< parallel to skyline when materialized
  SearchStats stats;
  double runtime_ms = 0;
};

/// Runs one query. Runtime covers the search (and materialization) only.
QueryResult run_query(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q, Algorithm algo,
                      PruningOptions pruning = {}, bool materialize = false, bool force_oracle = false);

struct DocHeader {
  std::string graph;
  DegreeConstraint constraint;
  std::string query;
  std::optional<std::uint64_t> seed;
};

/// Line-delimited JSON: header, one record per vector, trailing stats. With
/// `with_timing` unset the runtime field is written as null so documents of repeated
/// runs compare byte for byte.
void write_result_doc(std::ostream& out, const BipartiteGraph& g, const DocHeader& header,
                      const QueryResult& result, bool with_timing = true);

/// Up to `count` distinct vertices, seeded-random, whose maximal (alpha, beta)-core is
/// non-empty. Fewer are returned when fewer exist.
std::vector<VertexRef> pick_queries(const BipartiteGraph& g, const DegreeConstraint& c, std::size_t count,
                                    std::uint64_t seed);

struct BenchConfig {
  std::string dataset;
  std::vector<std::size_t> dims{3};
  std::vector<std::uint32_t> alphas{2};
  std::uint32_t beta = 2;
  std::vector<double> sigmas{1.0};
  std::vector<Algorithm> algos{Algorithm::Peel, Algorithm::Expand};
  std::size_t queries = 20;
  std::uint64_t seed = 1;
  PruningOptions pruning;
};

struct BenchRow {
  std::string dataset;
  std::size_t d = 0;
  std::uint32_t alpha = 0, beta = 0;
  double sigma = 1.0;
  Algorithm algo = Algorithm::Peel;
  std::string query;
  double runtime_ms = 0;
  std::size_t result_count = 0;
  std::uint64_t iterations = 0;
  SkylineSet skyline;  ///< kept for agreement checks; not part of the CSV
};

/// Full cross product of the configured sweeps. `g` must carry at least max(dims)
/// dimensions; smaller d uses the leading ones. Rows come out in sweep order, then by
/// query, then by algorithm.
std::vector<BenchRow> run_bench(const BipartiteGraph& g, const BenchConfig& config);

void write_bench_csv_header(std::ostream& out);
void write_bench_csv_row(std::ostream& out, const BenchRow& row);

}  // namespace esc
