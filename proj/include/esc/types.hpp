#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace esc {

/// Edge attribute value. Always finite and strictly positive in a loaded graph.
using Attr = double;

/// Stable edge identifier: the edge's position in BipartiteGraph::edges().
using EdgeId = std::uint32_t;

/// Dense vertex identifier across both layers: upper i -> i, lower j -> upper_count + j.
using VertexId = std::uint32_t;

enum class Layer : std::uint8_t { Upper, Lower };

struct VertexRef {
  Layer layer = Layer::Upper;
  std::uint32_t index = 0;

  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// Raised by the edge-list reader; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid graph data (duplicate edge, bad index).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated operation precondition (dimension mismatch, empty minimum, bad range).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minimum degrees: `alpha` for upper vertices, `beta` for lower vertices.
struct DegreeConstraint {
  std::uint32_t alpha = 1;
  std::uint32_t beta = 1;

  DegreeConstraint() = default;
  DegreeConstraint(std::uint32_t a, std::uint32_t b) : alpha(a), beta(b) {
    if (a < 1 || b < 1) throw DomainError("alpha and beta must be >= 1");
  }

  std::uint32_t bound(Layer layer) const { return layer == Layer::Upper ? alpha : beta; }
};

}  // namespace esc
