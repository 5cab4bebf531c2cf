#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "esc/graph.hpp"
#include "esc/skyline.hpp"
#include "esc/types.hpp"

namespace esc {

// Brute-force reference. Deliberately shares no code with the core/peeling/expanding
// modules beyond the graph container and the skyline set.

/// Instance too large for exhaustive enumeration.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_edges = 40;
  std::size_t max_dims = 4;
};

bool within_oracle_limits(const BipartiteGraph& g, OracleLimits limits = {});

/// Edges (ascending) of the connected q-core inside {X_i >= t_i}, by naive fixpoint.
std::optional<std::vector<EdgeId>> oracle_community(const BipartiteGraph& g, const DegreeConstraint& c,
                                                    VertexRef q, const SignificanceVector& t);

/// Skyline of the significances realized over the full per-dimension value grid.
/// Throws OracleRefusal above the limits unless `force` is set.
SkylineSet oracle_skyline(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
                          bool force = false, OracleLimits limits = {});

struct VerifyReport {
  std::vector<std::string> failures;
  bool oracle_compared = false;

  bool ok() const { return failures.empty(); }
};

/// Checks every vector is realized by its maximal community, that no two vectors
/// dominate each other, and (within oracle limits or when forced) equality with the oracle.
/// Takes a plain list so that malformed results (duplicates, dominated members) can be checked.
VerifyReport verify_result(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
                           std::span<const SignificanceVector> s, bool force = false);
VerifyReport verify_result(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
                           const SkylineSet& s, bool force = false);

}  // namespace esc
