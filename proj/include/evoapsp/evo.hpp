#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evoapsp/exact.hpp"
#include "evoapsp/graph.hpp"
#include "evoapsp/rng.hpp"

namespace evoapsp {

// One candidate solution: a walk with cached total weight.
struct Individual {
  std::vector<int> vertices;  // length >= 2
  std::int64_t weight = 0;

  int first() const { return vertices.front(); }
  int last() const { return vertices.back(); }
  int edge_count() const { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Individual&, const Individual&) = default;
};

enum class CrossoverKind { None, NaiveUniform, EndpointMatched, EndpointMatchedTrim };
enum class PathMode { SimplePath, Walk };
enum class TieRule { ReplaceOnTie, KeepOnTie };

struct EvoParams {
  CrossoverKind crossover_kind = CrossoverKind::None;
  double crossover_prob = 0.0;
  double mutation_lambda = 1.0;
  PathMode path_mode = PathMode::SimplePath;
  TieRule tie_rule = TieRule::ReplaceOnTie;
  std::uint64_t max_steps = 1;

  void validate() const {
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
      throw std::invalid_argument("EvoParams: crossover_prob outside [0,1]");
    if (!(mutation_lambda >= 0.0))
      throw std::invalid_argument("EvoParams: mutation_lambda must be non-negative");
    if (crossover_kind == CrossoverKind::None && crossover_prob != 0.0)
      throw std::invalid_argument("EvoParams: crossover_kind None forces crossover_prob 0");
  }
};

// Steady-state population: at most one individual per ordered endpoint pair.
// Keeps a flat slot table plus a start-vertex index so endpoint-matched
// parent lookup is O(1) draws instead of a population scan.
class Population {
 public:
  explicit Population(int n) : n_(n), slots_(static_cast<std::size_t>(n) * n), starts_(n) {}

  int n() const { return n_; }
  std::size_t size() const { return occupied_.size(); }

  const Individual* find(int s, int t) const {
    const auto& slot = slots_[index_of(s, t)];
    return slot ? &*slot : nullptr;
  }

  // All occupied pair indices, in insertion order.
  const std::vector<int>& occupied() const { return occupied_; }
  std::pair<int, int> pair_of(int idx) const { return {idx / n_, idx % n_}; }
  const Individual& at_index(int idx) const { return *slots_[idx]; }

  const Individual& uniform(RngStream& r) const {
    if (occupied_.empty()) throw std::logic_error("Population: empty");
    return *slots_[occupied_[r.uniform_index(occupied_.size())]];
  }

  // Uniform among individuals whose walk starts at v; nullptr if none.
  const Individual* uniform_starting_at(int v, RngStream& r) const {
    const auto& idx = starts_[v];
    if (idx.empty()) return nullptr;
    return &*slots_[idx[r.uniform_index(idx.size())]];
  }

  // Insert or overwrite the slot for the offspring's endpoint pair.
  void place(const Individual& ind) {
    const int idx = index_of(ind.first(), ind.last());
    auto& slot = slots_[idx];
    if (!slot) {
      occupied_.push_back(idx);
      starts_[ind.first()].push_back(idx);
    }
    slot = ind;
  }

 private:
  int index_of(int s, int t) const { return s * n_ + t; }

  int n_;
  std::vector<std::optional<Individual>> slots_;
  std::vector<int> occupied_;
  std::vector<std::vector<int>> starts_;
};

// One individual per edge: the two-vertex walk [u, v].
inline Population init_population(const Graph& g) {
  Population pop(g.n);
  for (const Edge& e : g.edges) pop.place(Individual{{e.src, e.dst}, e.weight});
  return pop;
}

namespace detail {

inline bool walk_contains(const Individual& ind, int v) {
  for (int u : ind.vertices)
    if (u == v) return true;
  return false;
}

// One elementary move in place: extend-left, extend-right, shrink-left or
// shrink-right, chosen uniformly among the applicable moves. In SimplePath
// mode an extension that would revisit a vertex leaves the walk unchanged
// (the step is still consumed). Returns whether the walk changed.
inline bool elementary_step(Individual& ind, const Graph& g, RngStream& r, PathMode mode) {
  enum Move { ExtendLeft, ExtendRight, ShrinkLeft, ShrinkRight };
  Move moves[4];
  int n_moves = 0;
  const int first = ind.first();
  const int last = ind.last();
  if (!g.in_adj[first].empty()) moves[n_moves++] = ExtendLeft;
  if (!g.out_adj[last].empty()) moves[n_moves++] = ExtendRight;
  if (ind.edge_count() >= 2) {
    moves[n_moves++] = ShrinkLeft;
    moves[n_moves++] = ShrinkRight;
  }
  if (n_moves == 0) return false;
  switch (moves[r.uniform_index(static_cast<std::uint64_t>(n_moves))]) {
    case ExtendLeft: {
      const auto& [u, w] = g.in_adj[first][r.uniform_index(g.in_adj[first].size())];
      if (mode == PathMode::SimplePath && walk_contains(ind, u)) return false;
      ind.vertices.insert(ind.vertices.begin(), u);
      ind.weight += w;
      return true;
    }
    case ExtendRight: {
      const auto& [v, w] = g.out_adj[last][r.uniform_index(g.out_adj[last].size())];
      if (mode == PathMode::SimplePath && walk_contains(ind, v)) return false;
      ind.vertices.push_back(v);
      ind.weight += w;
      return true;
    }
    case ShrinkLeft: {
      ind.weight -= g.weight(ind.vertices[0], ind.vertices[1]);
      ind.vertices.erase(ind.vertices.begin());
      return true;
    }
    case ShrinkRight: {
      const auto k = ind.vertices.size();
      ind.weight -= g.weight(ind.vertices[k - 2], ind.vertices[k - 1]);
      ind.vertices.pop_back();
      return true;
    }
  }
  return false;
}

inline bool is_simple(const Individual& ind, int n) {
  thread_local std::vector<char> seen;
  seen.assign(n, 0);
  for (int v : ind.vertices) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace detail

inline Individual elementary_mutation(const Individual& ind, const Graph& g, RngStream& r,
                                      PathMode mode = PathMode::SimplePath) {
  Individual out = ind;
  detail::elementary_step(out, g, r, mode);
  return out;
}

// S+1 elementary moves with S ~ Pois(lambda).
inline Individual mutate(const Individual& ind, const Graph& g, RngStream& r, double lambda = 1.0,
                         PathMode mode = PathMode::SimplePath) {
  Individual out = ind;
  const int steps = r.poisson(lambda) + 1;
  for (int i = 0; i < steps; ++i) detail::elementary_step(out, g, r, mode);
  return out;
}

// Concatenation crossover. NaiveUniform and EndpointMatched join a's walk to
// b's when last(a) = first(b); EndpointMatchedTrim additionally splices at a
// shared vertex, dropping a's tail after its first visit and b's head before
// its last visit. Incompatibility yields no offspring, not an error.
inline std::optional<Individual> crossover(const Individual& a, const Individual& b,
                                           CrossoverKind kind, const Graph& g,
                                           PathMode mode = PathMode::SimplePath) {
  auto finish = [&](Individual off) -> std::optional<Individual> {
    if (mode == PathMode::SimplePath && !detail::is_simple(off, g.n)) return std::nullopt;
    return off;
  };
  auto concat = [&]() -> std::optional<Individual> {
    if (a.last() != b.first()) return std::nullopt;
    Individual off;
    off.vertices.reserve(a.vertices.size() + b.vertices.size() - 1);
    off.vertices = a.vertices;
    off.vertices.insert(off.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    off.weight = a.weight + b.weight;
    return finish(std::move(off));
  };
  if (kind == CrossoverKind::EndpointMatchedTrim) {
    // Splice at the earliest vertex of a that b also visits.
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      const int x = a.vertices[i];
      std::size_t j = b.vertices.size();
      for (std::size_t k = b.vertices.size(); k-- > 0;)
        if (b.vertices[k] == x) {
          j = k;
          break;
        }
      if (j == b.vertices.size()) continue;
      if (a.vertices.front() == b.vertices.back()) break;  // endpoints must differ
      Individual off;
      off.vertices.assign(a.vertices.begin(), a.vertices.begin() + i + 1);
      off.vertices.insert(off.vertices.end(), b.vertices.begin() + j + 1, b.vertices.end());
      if (off.vertices.size() < 2) break;  // degenerate splice, fall back
      off.weight = 0;
      for (std::size_t k = 0; k + 1 < off.vertices.size(); ++k)
        off.weight += g.weight(off.vertices[k], off.vertices[k + 1]);
      return finish(std::move(off));
    }
    return concat();
  }
  return concat();
}

struct ParentSelection {
  const Individual* a = nullptr;
  const Individual* b = nullptr;  // null when the operator needs one parent or none compatible
};

// Mutation (kind None): one uniform individual. NaiveUniform: two independent
// uniform draws. EndpointMatched(/Trim): first uniform, second uniform among
// individuals starting at the first parent's last vertex.
inline ParentSelection select_parents(const Population& pop, CrossoverKind kind, RngStream& r) {
  if (pop.size() == 0) throw std::logic_error("select_parents: empty population");
  ParentSelection sel;
  sel.a = &pop.uniform(r);
  switch (kind) {
    case CrossoverKind::None:
      break;
    case CrossoverKind::NaiveUniform:
      sel.b = &pop.uniform(r);
      break;
    case CrossoverKind::EndpointMatched:
    case CrossoverKind::EndpointMatchedTrim:
      sel.b = pop.uniform_starting_at(sel.a->last(), r);
      break;
  }
  return sel;
}

// Offspring competes only against the incumbent with the same endpoints.
// Returns whether the slot changed.
inline bool selection_replace(Population& pop, const Individual& off, TieRule tie_rule) {
  const Individual* incumbent = pop.find(off.first(), off.last());
  if (incumbent != nullptr) {
    if (off.weight > incumbent->weight) return false;
    if (off.weight == incumbent->weight &&
        (tie_rule == TieRule::KeepOnTie || off.vertices == incumbent->vertices))
      return false;
  }
  pop.place(off);
  return true;
}

struct StepOutcome {
  bool used_crossover = false;
  bool offspring_produced = false;
  bool replaced = false;
  int pair_s = -1;  // endpoints of the produced offspring, when any
  int pair_t = -1;
};

// One steady-state iteration: crossover with probability p_c, else mutation;
// the offspring (if any) then competes for its endpoint slot. Counts as
// exactly one iteration regardless of outcome.
inline StepOutcome step(Population& pop, const Graph& g, const EvoParams& params, RngStream& r) {
  StepOutcome out;
  out.used_crossover = r.bernoulli(params.crossover_prob);
  if (out.used_crossover) {
    const ParentSelection sel = select_parents(pop, params.crossover_kind, r);
    if (sel.b != nullptr) {
      if (auto off = crossover(*sel.a, *sel.b, params.crossover_kind, g, params.path_mode)) {
        out.offspring_produced = true;
        out.pair_s = off->first();
        out.pair_t = off->last();
        out.replaced = selection_replace(pop, *off, params.tie_rule);
      }
    }
  } else {
    const ParentSelection sel = select_parents(pop, CrossoverKind::None, r);
    const Individual off = mutate(*sel.a, g, r, params.mutation_lambda, params.path_mode);
    out.offspring_produced = true;
    out.pair_s = off.first();
    out.pair_t = off.last();
    out.replaced = selection_replace(pop, off, params.tie_rule);
  }
  return out;
}

// True iff every ordered pair at finite oracle distance holds an individual
// of exactly that weight.
inline bool is_optimal(const Population& pop, const DistMatrix& oracle) {
  if (pop.n() != oracle.n) throw std::invalid_argument("is_optimal: size mismatch");
  for (int s = 0; s < oracle.n; ++s)
    for (int t = 0; t < oracle.n; ++t) {
      if (s == t || oracle.dist(s, t) == kInfWeight) continue;
      const Individual* ind = pop.find(s, t);
      if (ind == nullptr || ind->weight != oracle.dist(s, t)) return false;
    }
  return true;
}

struct RunStats {
  std::uint64_t steps_to_optimal = 0;  // meaningful only when success
  bool success = false;
  std::vector<std::pair<std::uint64_t, double>> trajectory;  // (step, fraction optimal)
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// The optimization-time loop: iterate until the population holds a shortest
// path for every pair or the budget runs out. Trajectory is sampled at
// geometrically spaced checkpoints (ratio 1.2).
inline RunStats run(const Graph& g, const EvoParams& params, const DistMatrix& oracle,
                    RngStream& r) {
  params.validate();
  if (g.n != oracle.n) throw std::invalid_argument("run: oracle size mismatch");
  RunStats stats;
  stats.master_seed = r.master_seed();
  stats.stream_id = r.stream_id();

  Population pop = init_population(g);
  std::vector<char> optimal_mask(static_cast<std::size_t>(g.n) * g.n, 0);
  std::int64_t needed = 0;
  std::int64_t have = 0;
  for (int s = 0; s < g.n; ++s)
    for (int t = 0; t < g.n; ++t) {
      if (s == t || oracle.dist(s, t) == kInfWeight) continue;
      ++needed;
      const Individual* ind = pop.find(s, t);
      if (ind != nullptr && ind->weight == oracle.dist(s, t)) {
        optimal_mask[static_cast<std::size_t>(s) * g.n + t] = 1;
        ++have;
      }
    }
  const auto frac = [&] { return needed == 0 ? 1.0 : static_cast<double>(have) / needed; };
  stats.trajectory.emplace_back(0, frac());
  if (have == needed) {
    stats.success = true;
    stats.steps_to_optimal = 0;
    return stats;
  }

  std::uint64_t next_checkpoint = 1;
  for (std::uint64_t t = 1; t <= params.max_steps; ++t) {
    const StepOutcome out = step(pop, g, params, r);
    if (out.replaced) {
      const std::size_t idx = static_cast<std::size_t>(out.pair_s) * g.n + out.pair_t;
      if (!optimal_mask[idx] &&
          pop.find(out.pair_s, out.pair_t)->weight == oracle.dist(out.pair_s, out.pair_t)) {
        optimal_mask[idx] = 1;
        ++have;
      }
    }
    if (t == next_checkpoint) {
      stats.trajectory.emplace_back(t, frac());
      next_checkpoint =
          std::max(next_checkpoint + 1,
                   static_cast<std::uint64_t>(static_cast<double>(next_checkpoint) * 1.2 + 0.999999));
    }
    if (have == needed) {
      stats.success = true;
      stats.steps_to_optimal = t;
      if (stats.trajectory.back().first != t) stats.trajectory.emplace_back(t, 1.0);
      return stats;
    }
  }
  if (stats.trajectory.back().first != params.max_steps)
    stats.trajectory.emplace_back(params.max_steps, frac());
  return stats;
}

}  // namespace evoapsp
