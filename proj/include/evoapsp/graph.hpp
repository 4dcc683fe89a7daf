#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evoapsp/rng.hpp"

namespace evoapsp {

struct Edge {
  int src;
  int dst;
  std::int64_t weight;  // numerator; actual weight is weight / Graph::weight_denom

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple directed graph with strictly positive weights. Vertices are dense
// ids 0..n-1. Weights are stored as 64-bit integers scaled by a common
// power-of-ten denominator so comparisons stay exact. Immutable after
// construction; safe to share across threads by const reference.
struct Graph {
  int n = 0;
  std::int64_t weight_denom = 1;
  std::vector<Edge> edges;  // sorted by (src, dst)
  std::vector<std::vector<std::pair<int, std::int64_t>>> out_adj;
  std::vector<std::vector<std::pair<int, std::int64_t>>> in_adj;
  std::vector<std::int64_t> weight_matrix;  // n*n, -1 where no edge

  // Weight of edge (u,v), or -1 if absent.
  std::int64_t weight(int u, int v) const {
    return weight_matrix[static_cast<std::size_t>(u) * n + v];
  }

  // Validates invariants, sorts edges, canonicalizes the denominator and
  // builds both adjacency indexes.
  static Graph from_edges(int n, std::vector<Edge> edges, std::int64_t weight_denom = 1) {
    if (n < 1) throw std::invalid_argument("Graph: n must be at least 1");
    if (weight_denom < 1) throw std::invalid_argument("Graph: weight_denom must be positive");
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
        throw std::invalid_argument("Graph: vertex id out of range");
      if (e.src == e.dst) throw std::invalid_argument("Graph: self-loop");
      if (e.weight <= 0) throw std::invalid_argument("Graph: non-positive weight");
      if (i > 0 && edges[i - 1].src == e.src && edges[i - 1].dst == e.dst)
        throw std::invalid_argument("Graph: duplicate edge");
    }
    // Canonical denominator: divide out common powers of ten.
    while (weight_denom > 1 && weight_denom % 10 == 0 &&
           std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.weight % 10 == 0; })) {
      weight_denom /= 10;
      for (Edge& e : edges) e.weight /= 10;
    }
    Graph g;
    g.n = n;
    g.weight_denom = weight_denom;
    g.edges = std::move(edges);
    g.out_adj.resize(n);
    g.in_adj.resize(n);
    g.weight_matrix.assign(static_cast<std::size_t>(n) * n, -1);
    for (const Edge& e : g.edges) {
      g.out_adj[e.src].emplace_back(e.dst, e.weight);
      g.in_adj[e.dst].emplace_back(e.src, e.weight);
      g.weight_matrix[static_cast<std::size_t>(e.src) * n + e.dst] = e.weight;
    }
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n == b.n && a.weight_denom == b.weight_denom && a.edges == b.edges;
  }
};

// Complete directed graph, each weight uniform on [w_min, w_max].
// Deterministic for a fixed seed.
inline Graph generate_complete_uniform(int n, std::int64_t w_min, std::int64_t w_max,
                                       std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_complete_uniform: n must be at least 2");
  if (w_min < 1 || w_min > w_max)
    throw std::invalid_argument("generate_complete_uniform: need 1 <= w_min <= w_max");
  RngStream r(seed, 0);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1));
  const auto span = static_cast<std::uint64_t>(w_max - w_min + 1);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      edges.push_back({u, v, w_min + static_cast<std::int64_t>(r.uniform_index(span))});
    }
  return Graph::from_edges(n, std::move(edges));
}

// Complete graph where the unique shortest u->v path for u < v is the unit
// chain u, u+1, ..., v; every non-chain edge weighs heavy * n.
inline Graph generate_hard_path(int n, std::int64_t heavy) {
  if (n < 2) throw std::invalid_argument("generate_hard_path: n must be at least 2");
  if (heavy < n) throw std::invalid_argument("generate_hard_path: heavy must be at least n");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const std::int64_t w = (v == u + 1) ? 1 : heavy * n;
      edges.push_back({u, v, w});
    }
  return Graph::from_edges(n, std::move(edges));
}

namespace detail {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::int64_t pow10_i64(int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= 10;
  return r;
}

}  // namespace detail

using ParseError = detail::ParseError;

// Edge-list text format: first line "n m"; then m lines "src dst weight";
// '#' starts a comment line. Weights may be positive integers or decimals
// with up to 9 fractional digits.
inline Graph parse_graph(std::string_view text) {
  struct RawEdge {
    int src, dst;
    std::int64_t mantissa;
    int frac_digits;
    int line;
  };
  std::vector<RawEdge> raw;
  int n = -1;
  long m = -1;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [](int ln, const std::string& what) -> ParseError {
    return ParseError("parse error at line " + std::to_string(ln) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 1 || m < 0) throw fail(line_no, "expected header \"n m\"");
      continue;
    }
    std::string s_tok, d_tok, w_tok;
    if (!(ls >> s_tok)) continue;  // blank line
    if (!(ls >> d_tok >> w_tok)) throw fail(line_no, "expected \"src dst weight\"");
    std::string extra;
    if (ls >> extra) throw fail(line_no, "trailing token \"" + extra + "\"");
    RawEdge e{};
    e.line = line_no;
    try {
      e.src = std::stoi(s_tok);
      e.dst = std::stoi(d_tok);
    } catch (const std::exception&) {
      throw fail(line_no, "bad vertex id");
    }
    const auto dot = w_tok.find('.');
    std::string digits = w_tok;
    e.frac_digits = 0;
    if (dot != std::string::npos) {
      e.frac_digits = static_cast<int>(w_tok.size() - dot - 1);
      if (e.frac_digits == 0 || e.frac_digits > 9) throw fail(line_no, "bad weight");
      digits = w_tok.substr(0, dot) + w_tok.substr(dot + 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw fail(line_no, "bad weight");
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e.mantissa);
    if (ec != std::errc{} || p != digits.data() + digits.size()) throw fail(line_no, "bad weight");
    if (e.mantissa <= 0) throw fail(line_no, "non-positive weight");
    if (e.src == e.dst) throw fail(line_no, "self-loop");
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw fail(line_no, "vertex id out of range");
    raw.push_back(e);
  }
  if (n < 0) throw ParseError("parse error: missing header line");
  if (static_cast<long>(raw.size()) != m)
    throw ParseError("parse error: header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(raw.size()));
  int max_frac = 0;
  for (const RawEdge& e : raw) max_frac = std::max(max_frac, e.frac_digits);
  const std::int64_t denom = detail::pow10_i64(max_frac);
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw)
    edges.push_back({e.src, e.dst, e.mantissa * detail::pow10_i64(max_frac - e.frac_digits)});
  // Re-check pairwise uniqueness with line numbers before handing off.
  {
    std::vector<std::pair<std::pair<int, int>, int>> keys;
    keys.reserve(raw.size());
    for (const RawEdge& e : raw) keys.push_back({{e.src, e.dst}, e.line});
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i)
      if (keys[i].first == keys[i - 1].first)
        throw fail(keys[i].second, "duplicate edge (" + std::to_string(keys[i].first.first) + "," +
                                       std::to_string(keys[i].first.second) + ")");
  }
  return Graph::from_edges(n, std::move(edges), denom);
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  int frac = 0;
  for (std::int64_t d = g.weight_denom; d > 1; d /= 10) ++frac;
  for (const Edge& e : g.edges) {
    out << e.src << ' ' << e.dst << ' ';
    if (frac == 0) {
      out << e.weight;
    } else {
      const std::int64_t whole = e.weight / g.weight_denom;
      std::int64_t rem = e.weight % g.weight_denom;
      std::string fd(frac, '0');
      for (int i = frac - 1; i >= 0; --i) {
        fd[i] = static_cast<char>('0' + rem % 10);
        rem /= 10;
      }
      out << whole << '.' << fd;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace evoapsp
