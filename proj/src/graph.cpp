#include "esc/graph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>
#include <unordered_set>

namespace esc {

namespace {

std::uint64_t pair_key(std::uint32_t u, std::uint32_t l) {
  return (static_cast<std::uint64_t>(u) << 32) | l;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& index,
                     std::vector<std::string>& labels, std::string_view label) {
  auto [it, inserted] = index.try_emplace(std::string(label), static_cast<std::uint32_t>(labels.size()));
  if (inserted) labels.emplace_back(label);
  return it->second;
}

}  // namespace

BipartiteGraph::BipartiteGraph(Topology topology, std::size_t dims, std::vector<Attr> attrs)
    : topology_(std::move(topology)), dims_(dims), attrs_(std::move(attrs)) {
  if (dims_ == 0) throw DomainError("graph dimensionality must be positive");
  if (attrs_.size() != topology_.edges.size() * dims_)
    throw ValidationError("attribute table size does not match edges * dims");
  for (Attr x : attrs_)
    if (!std::isfinite(x) || x <= 0) throw ValidationError("attributes must be finite and > 0");

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(topology_.edges.size() * 2);
  for (const auto& e : topology_.edges) {
    if (e.upper >= upper_count() || e.lower >= lower_count())
      throw ValidationError("edge endpoint out of range");
    if (!seen.insert(pair_key(e.upper, e.lower)).second)
      throw ValidationError("duplicate edge (" + topology_.upper_labels[e.upper] + ", " +
                            topology_.lower_labels[e.lower] + ")");
  }
  for (std::uint32_t i = 0; i < topology_.upper_labels.size(); ++i)
    if (!upper_index_.emplace(topology_.upper_labels[i], i).second)
      throw ValidationError("duplicate upper label " + topology_.upper_labels[i]);
  for (std::uint32_t i = 0; i < topology_.lower_labels.size(); ++i)
    if (!lower_index_.emplace(topology_.lower_labels[i], i).second)
      throw ValidationError("duplicate lower label " + topology_.lower_labels[i]);
  build_adjacency();
}

void BipartiteGraph::build_adjacency() {
  const std::size_t n = vertex_count();
  offsets_.assign(n + 1, 0);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    ++offsets_[upper_vertex(e) + 1];
    ++offsets_[lower_vertex(e) + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edge_count());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const VertexId u = upper_vertex(e), l = lower_vertex(e);
    adjacency_[cursor[u]++] = Incidence{l, e};
    adjacency_[cursor[l]++] = Incidence{u, e};
  }
}

VertexId BipartiteGraph::vertex_id(VertexRef ref) const {
  if (!contains(ref)) throw DomainError("vertex reference out of range");
  return ref.layer == Layer::Upper ? ref.index : static_cast<VertexId>(upper_count() + ref.index);
}

VertexRef BipartiteGraph::vertex_ref(VertexId v) const {
  if (v < upper_count()) return {Layer::Upper, v};
  return {Layer::Lower, static_cast<std::uint32_t>(v - upper_count())};
}

bool BipartiteGraph::contains(VertexRef ref) const {
  return ref.index < (ref.layer == Layer::Upper ? upper_count() : lower_count());
}

const std::string& BipartiteGraph::label(VertexRef ref) const {
  return ref.layer == Layer::Upper ? topology_.upper_labels.at(ref.index)
                                   : topology_.lower_labels.at(ref.index);
}

std::optional<VertexRef> BipartiteGraph::find_vertex(Layer layer, const std::string& label) const {
  const auto& index = layer == Layer::Upper ? upper_index_ : lower_index_;
  auto it = index.find(label);
  if (it == index.end()) return std::nullopt;
  return VertexRef{layer, it->second};
}

BipartiteGraph BipartiteGraph::project_dims(std::size_t k) const {
  if (k == 0 || k > dims_) throw DomainError("projection dimensionality out of range");
  if (k == dims_) return *this;
  std::vector<Attr> out;
  out.reserve(edge_count() * k);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    auto row = attrs(e);
    out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return BipartiteGraph(topology_, k, std::move(out));
}

BipartiteGraph BipartiteGraph::edge_subgraph(std::span<const EdgeId> keep) const {
  Topology t{topology_.upper_labels, topology_.lower_labels, {}};
  std::vector<Attr> out;
  t.edges.reserve(keep.size());
  out.reserve(keep.size() * dims_);
  for (EdgeId e : keep) {
    t.edges.push_back(endpoints(e));
    auto row = attrs(e);
    out.insert(out.end(), row.begin(), row.end());
  }
  return BipartiteGraph(std::move(t), dims_, std::move(out));
}

BipartiteGraph::DegreeSummary BipartiteGraph::degree_summary() const {
  DegreeSummary s;
  std::size_t nu = 0, nl = 0;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const auto d = full_degree(v);
    if (d == 0) continue;
    if (layer_of(v) == Layer::Upper) {
      s.max_upper = std::max(s.max_upper, d);
      ++nu;
    } else {
      s.max_lower = std::max(s.max_lower, d);
      ++nl;
    }
  }
  if (nu) s.avg_upper = static_cast<double>(edge_count()) / static_cast<double>(nu);
  if (nl) s.avg_lower = static_cast<double>(edge_count()) / static_cast<double>(nl);
  return s;
}

BipartiteGraph load_edge_list(std::istream& in) {
  static const std::regex header(R"(^#\s*d\s*=\s*(\d+)\s*$)");
  Topology t;
  std::unordered_map<std::string, std::uint32_t> upper_index, lower_index;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Attr> attrs;
  std::optional<std::size_t> dims;
  bool data_seen = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv = line;
    const auto first = sv.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (sv[first] == '#') {
      std::smatch m;
      if (std::regex_match(line, m, header)) {
        if (data_seen) throw ParseError(lineno, "dimension header after data lines");
        const auto k = std::stoul(m[1].str());
        if (k == 0) throw ParseError(lineno, "dimension header must be positive");
        dims = k;
      }
      continue;
    }
    const auto tokens = split_ws(sv);
    if (tokens.size() < 3) throw ParseError(lineno, "expected <upper> <lower> <attributes...>");
    const std::size_t k = tokens.size() - 2;
    if (!dims) dims = k;
    if (k != *dims)
      throw ParseError(lineno, "expected " + std::to_string(*dims) + " attributes, found " +
                                   std::to_string(k));
    data_seen = true;
    const auto u = intern(upper_index, t.upper_labels, tokens[0]);
    const auto l = intern(lower_index, t.lower_labels, tokens[1]);
    if (!seen.insert(pair_key(u, l)).second)
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate edge (" +
                            std::string(tokens[0]) + ", " + std::string(tokens[1]) + ")");
    t.edges.push_back({u, l});
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const auto tok = tokens[i];
      Attr x = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "malformed attribute '" + std::string(tok) + "'");
      if (!std::isfinite(x)) throw ParseError(lineno, "non-finite attribute");
      if (x <= 0) throw ParseError(lineno, "non-positive attribute");
      attrs.push_back(x);
    }
  }
  if (!dims) throw ParseError(lineno, "cannot infer dimensionality from an empty file without a header");
  return BipartiteGraph(std::move(t), *dims, std::move(attrs));
}

BipartiteGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in);
}

Topology load_topology(std::istream& in) {
  Topology t;
  std::unordered_map<std::string, std::uint32_t> upper_index, lower_index;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
    if (tokens.size() < 2) throw ParseError(lineno, "expected <upper> <lower>");
    const auto u = intern(upper_index, t.upper_labels, tokens[0]);
    const auto l = intern(lower_index, t.lower_labels, tokens[1]);
    if (seen.insert(pair_key(u, l)).second) t.edges.push_back({u, l});
  }
  return t;
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_topology(in);
}

std::string format_attr(Attr x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  out << "# d=" << g.dims() << '\n';
  const auto& t = g.topology();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << t.upper_labels[t.edges[e].upper] << ' ' << t.lower_labels[t.edges[e].lower];
    for (Attr x : g.attrs(e)) out << ' ' << format_attr(x);
    out << '\n';
  }
}

void write_edge_list_file(const std::string& path, const BipartiteGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed for " + path);
}

BipartiteGraph generate_attributes(const Topology& topology, std::size_t d, Attr lo, Attr hi,
                                   std::uint64_t seed) {
  if (!(lo > 0)) throw DomainError("attribute range lower bound must be > 0");
  if (!(hi >= lo)) throw DomainError("attribute range upper bound must be >= lower bound");
  if (d == 0) throw DomainError("attribute dimensionality must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Attr> attrs(topology.edges.size() * d);
  if (lo == hi) {
    std::fill(attrs.begin(), attrs.end(), lo);
  } else {
    std::uniform_real_distribution<Attr> dist(lo, std::nextafter(hi, hi + 1));
    for (auto& x : attrs) x = std::clamp(dist(rng), lo, hi);
  }
  return BipartiteGraph(topology, d, std::move(attrs));
}

Topology random_topology(std::size_t upper, std::size_t lower, std::size_t edges,
                         std::uint64_t seed) {
  if (upper == 0 || lower == 0) throw DomainError("both layers need at least one vertex");
  if (edges > upper * lower) throw DomainError("more edges requested than vertex pairs exist");
  Topology t;
  for (std::size_t i = 0; i < upper; ++i) t.upper_labels.push_back("u" + std::to_string(i));
  for (std::size_t i = 0; i < lower; ++i) t.lower_labels.push_back("v" + std::to_string(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick_u(0, static_cast<std::uint32_t>(upper - 1));
  std::uniform_int_distribution<std::uint32_t> pick_l(0, static_cast<std::uint32_t>(lower - 1));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges * 2);
  // FIXME: rejection sampling degrades when `edges` approaches upper * lower.
  while (t.edges.size() < edges) {
    const auto u = pick_u(rng), l = pick_l(rng);
    if (seen.insert(pair_key(u, l)).second) t.edges.push_back({u, l});
  }
  return t;
}

BipartiteGraph sample_edges(const BipartiteGraph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0) || fraction > 1) throw DomainError("sample fraction must lie in (0, 1]");
  std::vector<EdgeId> ids(g.edge_count());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  const auto keep = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ids.size())));
  ids.resize(keep);
  std::sort(ids.begin(), ids.end());
  return g.edge_subgraph(ids);
}

WorkingGraph::WorkingGraph(const BipartiteGraph& g, bool full)
    : graph_(&g), alive_(g.edge_count(), 0), degree_(g.vertex_count(), 0) {
  if (full) {
    std::fill(alive_.begin(), alive_.end(), 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) degree_[v] = g.full_degree(v);
    count_ = g.edge_count();
  }
}

void WorkingGraph::add(EdgeId e) {
  if (alive_[e]) return;
  alive_[e] = 1;
  ++degree_[graph_->upper_vertex(e)];
  ++degree_[graph_->lower_vertex(e)];
  ++count_;
}

void WorkingGraph::remove(EdgeId e) {
  if (!alive_[e]) return;
  alive_[e] = 0;
  --degree_[graph_->upper_vertex(e)];
  --degree_[graph_->lower_vertex(e)];
  --count_;
}

void WorkingGraph::clear() {
  std::fill(alive_.begin(), alive_.end(), 0);
  std::fill(degree_.begin(), degree_.end(), 0);
  count_ = 0;
}

std::vector<EdgeId> WorkingGraph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(count_);
  for (EdgeId e = 0; e < alive_.size(); ++e)
    if (alive_[e]) out.push_back(e);
  return out;
}

WorkingGraph filtered_view(const BipartiteGraph& g, const ThresholdBox& box) {
  if (box.dims() != g.dims()) throw DomainError("threshold box dimensionality differs from graph");
  WorkingGraph w(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (box.admits(g.attrs(e))) w.add(e);
  return w;
}

}  // namespace esc
