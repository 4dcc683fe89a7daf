#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <nlohmann/json.hpp>

#include "evoapsp/evo.hpp"
#include "evoapsp/exact.hpp"
#include "evoapsp/graph.hpp"
#include "evoapsp/rng.hpp"

namespace evoapsp {

struct GeneratorSpec {
  enum class Kind { CompleteUniform, HardPath };
  Kind kind = Kind::HardPath;
  std::int64_t w_min = 1, w_max = 100;  // CompleteUniform
  std::int64_t heavy_multiplier = 1;    // HardPath: heavy = heavy_multiplier * n
};

struct VariantSpec {
  std::string name;
  EvoParams params;  // max_steps filled per size from the budget rule
};

struct ExperimentPlan {
  std::vector<VariantSpec> variants;
  std::vector<int> sizes;
  int repetitions = 1;
  GeneratorSpec generator;
  std::uint64_t master_seed = 0;
  double budget_factor = 50.0;
  double budget_exponent = 4.0;

  std::uint64_t budget_for(int n) const {
    return static_cast<std::uint64_t>(
        std::llround(budget_factor * std::pow(static_cast<double>(n), budget_exponent)));
  }

  void validate() const {
    if (variants.empty()) throw std::invalid_argument("plan: no variants");
    if (repetitions < 1) throw std::invalid_argument("plan: repetitions must be at least 1");
    if (sizes.empty()) throw std::invalid_argument("plan: no sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (sizes[i] <= sizes[i - 1])
        throw std::invalid_argument("plan: sizes must be strictly increasing");
    for (std::size_t i = 0; i < variants.size(); ++i)
      for (std::size_t j = i + 1; j < variants.size(); ++j)
        if (variants[i].name == variants[j].name)
          throw std::invalid_argument("plan: duplicate variant name " + variants[i].name);
  }
};

struct RunRow {
  std::string variant;
  int n = 0;
  int rep = 0;
  std::uint64_t steps = 0;
  bool success = false;
  double wall_ms = 0.0;
  std::string error;  // non-empty when the run itself failed
};

struct ExperimentTable {
  std::vector<RunRow> rows;  // canonical (variant, size, rep) order
};

namespace detail {

// Stream id layout: variant index in bits 40+, size index in bits 20..39,
// repetition in bits 0..19. Instance seeds use a disjoint tag bit.
inline std::uint64_t run_stream_id(std::size_t variant_idx, std::size_t size_idx, int rep) {
  return (static_cast<std::uint64_t>(variant_idx) << 40) |
         (static_cast<std::uint64_t>(size_idx) << 20) | static_cast<std::uint64_t>(rep);
}

inline std::uint64_t instance_seed(std::uint64_t master, std::size_t size_idx, int rep) {
  RngStream r(master, (1ULL << 60) | run_stream_id(0, size_idx, rep));
  return r.next_u64();
}

inline Graph build_instance(const GeneratorSpec& gen, int n, std::uint64_t master,
                            std::size_t size_idx, int rep) {
  switch (gen.kind) {
    case GeneratorSpec::Kind::CompleteUniform:
      return generate_complete_uniform(n, gen.w_min, gen.w_max,
                                       instance_seed(master, size_idx, rep));
    case GeneratorSpec::Kind::HardPath:
      return generate_hard_path(n, gen.heavy_multiplier * n);
  }
  throw std::logic_error("build_instance: bad generator kind");
}

}  // namespace detail

// Executes every (variant, size, rep) cell on a worker pool. Each run owns a
// stream derived from its indices, so the table is a pure function of the
// plan regardless of worker count or scheduling. A run that throws becomes a
// failed row with a diagnostic; the experiment continues.
inline ExperimentTable run_experiment(const ExperimentPlan& plan, int jobs = 1) {
  plan.validate();
  if (jobs < 1) throw std::invalid_argument("run_experiment: jobs must be at least 1");

  struct Cell {
    std::size_t variant_idx, size_idx;
    int rep;
  };
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < plan.variants.size(); ++v)
    for (std::size_t s = 0; s < plan.sizes.size(); ++s)
      for (int rep = 0; rep < plan.repetitions; ++rep) cells.push_back({v, s, rep});

  ExperimentTable table;
  table.rows.resize(cells.size());

  // Oracles are shared per size (HardPath) or per (size, rep); recomputing
  // per cell is cheap relative to the runs themselves.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& c = cells[i];
      const int n = plan.sizes[c.size_idx];
      RunRow& row = table.rows[i];
      row.variant = plan.variants[c.variant_idx].name;
      row.n = n;
      row.rep = c.rep;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Graph g =
            detail::build_instance(plan.generator, n, plan.master_seed, c.size_idx, c.rep);
        const DistMatrix oracle = floyd_warshall(g);
        EvoParams params = plan.variants[c.variant_idx].params;
        params.max_steps = plan.budget_for(n);
        RngStream r(plan.master_seed, detail::run_stream_id(c.variant_idx, c.size_idx, c.rep));
        const RunStats stats = run(g, params, oracle, r);
        row.steps = stats.success ? stats.steps_to_optimal : params.max_steps;
        row.success = stats.success;
      } catch (const std::exception& e) {
        row.success = false;
        row.error = e.what();
      }
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return table;
}

struct GroupSummary {
  std::string variant;
  int n = 0;
  double mean = 0, median = 0, stddev = 0;
  double ci_lo = 0, ci_hi = 0;  // 95% Student-t CI of the mean
  double success_rate = 0;
  bool has_failures = false;
};

// Per-(variant, n) statistics. Step statistics are over successful runs
// only; success_rate counts all runs in the group.
inline std::vector<GroupSummary> summarize(const ExperimentTable& t) {
  if (t.rows.empty()) throw std::invalid_argument("summarize: empty table");
  std::vector<GroupSummary> out;
  std::vector<std::pair<std::string, int>> seen;
  for (const RunRow& anchor : t.rows) {
    const std::pair<std::string, int> key{anchor.variant, anchor.n};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    std::vector<double> steps;
    int total = 0, ok = 0;
    for (const RunRow& r : t.rows) {
      if (r.variant != key.first || r.n != key.second) continue;
      ++total;
      if (r.success) {
        ++ok;
        steps.push_back(static_cast<double>(r.steps));
      }
    }
    GroupSummary g;
    g.variant = key.first;
    g.n = key.second;
    g.success_rate = static_cast<double>(ok) / total;
    g.has_failures = ok < total;
    if (!steps.empty()) {
      std::sort(steps.begin(), steps.end());
      const auto m = steps.size();
      g.median = (m % 2 == 1) ? steps[m / 2] : 0.5 * (steps[m / 2 - 1] + steps[m / 2]);
      double sum = 0;
      for (double x : steps) sum += x;
      g.mean = sum / m;
      if (m >= 2) {
        double ss = 0;
        for (double x : steps) ss += (x - g.mean) * (x - g.mean);
        g.stddev = std::sqrt(ss / (m - 1));
        boost::math::students_t dist(static_cast<double>(m - 1));
        const double tq = boost::math::quantile(dist, 0.975);
        const double half = tq * g.stddev / std::sqrt(static_cast<double>(m));
        g.ci_lo = g.mean - half;
        g.ci_hi = g.mean + half;
      } else {
        g.ci_lo = g.ci_hi = g.mean;
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

struct FitResult {
  double alpha = 0;  // exponent
  double log_c = 0;  // natural-log constant
  double r2 = 0;
  int n_min = 0, n_max = 0;
};

// Least squares on (ln n, ln mean). Natural log throughout.
inline FitResult fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].second > 0))
      throw std::invalid_argument("fit_exponent: means must be positive");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("fit_exponent: duplicate n");
  }
  const auto m = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, mean] : points) {
    const double x = std::log(n), y = std::log(mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  FitResult f;
  f.alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.log_c = (sy - f.alpha * sx) / m;
  double ss_res = 0;
  for (const auto& [n, mean] : points) {
    const double e = std::log(mean) - (f.log_c + f.alpha * std::log(n));
    ss_res += e * e;
  }
  const double ss_tot = syy - sy * sy / m;
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  double n_min = points.front().first, n_max = points.front().first;
  for (const auto& [n, mean] : points) {
    n_min = std::min(n_min, n);
    n_max = std::max(n_max, n);
  }
  f.n_min = static_cast<int>(n_min);
  f.n_max = static_cast<int>(n_max);
  return f;
}

enum class ModelFamily { N4, N35SqrtLog, N325QuartLog, Custom };

// Reference curves c * n^alpha * (ln n)^beta for the named bound shapes.
inline double model_curve_value(double n, ModelFamily family, double c, double custom_alpha = 0,
                                double custom_beta = 0) {
  if (!(n >= 2)) throw std::invalid_argument("model_curve_value: n must be at least 2");
  if (!(c > 0)) throw std::invalid_argument("model_curve_value: c must be positive");
  switch (family) {
    case ModelFamily::N4:
      return c * std::pow(n, 4.0);
    case ModelFamily::N35SqrtLog:
      return c * std::pow(n, 3.5) * std::sqrt(std::log(n));
    case ModelFamily::N325QuartLog:
      return c * std::pow(n, 3.25) * std::pow(std::log(n), 0.25);
    case ModelFamily::Custom:
      return c * std::pow(n, custom_alpha) * std::pow(std::log(n), custom_beta);
  }
  throw std::logic_error("model_curve_value: bad family");
}

inline std::vector<double> model_curve(const std::vector<double>& ns, ModelFamily family, double c,
                                       double custom_alpha = 0, double custom_beta = 0) {
  std::vector<double> out;
  out.reserve(ns.size());
  for (double n : ns) out.push_back(model_curve_value(n, family, c, custom_alpha, custom_beta));
  return out;
}

using Rational = boost::multiprecision::mpq_rational;

struct HarmonicValue {
  Rational exact;
  double value = 0;
};

// H_m = sum_{i=1..m} 1/i, exact plus a float rendering.
inline HarmonicValue harmonic(int m) {
  if (m < 1) throw std::invalid_argument("harmonic: m must be positive");
  Rational h = 0;
  for (int i = 1; i <= m; ++i) h += Rational(1, i);
  return {h, static_cast<double>(h)};
}

// --- plan / table serialization ------------------------------------------

inline CrossoverKind crossover_kind_from_string(const std::string& s) {
  if (s == "none") return CrossoverKind::None;
  if (s == "naive") return CrossoverKind::NaiveUniform;
  if (s == "matched") return CrossoverKind::EndpointMatched;
  if (s == "matched-trim") return CrossoverKind::EndpointMatchedTrim;
  throw std::invalid_argument("unknown crossover kind: " + s);
}

inline std::string to_string(CrossoverKind k) {
  switch (k) {
    case CrossoverKind::None: return "none";
    case CrossoverKind::NaiveUniform: return "naive";
    case CrossoverKind::EndpointMatched: return "matched";
    case CrossoverKind::EndpointMatchedTrim: return "matched-trim";
  }
  return "?";
}

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
  ExperimentPlan plan;
  plan.master_seed = j.value("master_seed", std::uint64_t{0});
  plan.sizes = j.at("sizes").get<std::vector<int>>();
  plan.repetitions = j.at("repetitions").get<int>();
  if (j.contains("budget")) {
    plan.budget_factor = j["budget"].value("factor", 50.0);
    plan.budget_exponent = j["budget"].value("exponent", 4.0);
  }
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    const std::string kind = g.value("kind", "hard-path");
    if (kind == "hard-path") {
      plan.generator.kind = GeneratorSpec::Kind::HardPath;
      plan.generator.heavy_multiplier = g.value("heavy_multiplier", std::int64_t{1});
    } else if (kind == "complete-uniform") {
      plan.generator.kind = GeneratorSpec::Kind::CompleteUniform;
      plan.generator.w_min = g.value("w_min", std::int64_t{1});
      plan.generator.w_max = g.value("w_max", std::int64_t{100});
    } else {
      throw std::invalid_argument("plan: unknown generator kind " + kind);
    }
  }
  for (const auto& v : j.at("variants")) {
    VariantSpec spec;
    spec.name = v.at("name").get<std::string>();
    spec.params.crossover_kind = crossover_kind_from_string(v.value("crossover", "none"));
    spec.params.crossover_prob =
        v.value("pc", spec.params.crossover_kind == CrossoverKind::None ? 0.0 : 0.5);
    spec.params.mutation_lambda = v.value("lambda", 1.0);
    spec.params.tie_rule =
        v.value("tie", "replace") == std::string("keep") ? TieRule::KeepOnTie : TieRule::ReplaceOnTie;
    spec.params.path_mode =
        v.value("mode", "path") == std::string("walk") ? PathMode::Walk : PathMode::SimplePath;
    spec.params.validate();
    plan.variants.push_back(std::move(spec));
  }
  plan.validate();
  return plan;
}

inline std::string table_to_csv(const ExperimentTable& t) {
  std::ostringstream out;
  out << "variant,n,rep,steps,success,wall_ms\n";
  for (const RunRow& r : t.rows)
    out << r.variant << ',' << r.n << ',' << r.rep << ',' << r.steps << ',' << (r.success ? 1 : 0)
        << ',' << r.wall_ms << '\n';
  return out.str();
}

inline std::string summary_to_csv(const std::vector<GroupSummary>& groups) {
  std::ostringstream out;
  out << "variant,n,mean,median,std,ci_lo,ci_hi,success_rate\n";
  for (const GroupSummary& g : groups)
    out << g.variant << ',' << g.n << ',' << g.mean << ',' << g.median << ',' << g.stddev << ','
        << g.ci_lo << ',' << g.ci_hi << ',' << g.success_rate << '\n';
  return out.str();
}

inline nlohmann::json fit_to_json(const std::string& variant, const FitResult& f) {
  return {{"variant", variant}, {"alpha", f.alpha},  {"log_c", f.log_c},
          {"r2", f.r2},         {"n_min", f.n_min},  {"n_max", f.n_max}};
}

// Fit of a variant's (n, mean) summary points, successful groups only.
inline FitResult fit_variant(const std::vector<GroupSummary>& groups, const std::string& variant) {
  std::vector<std::pair<double, double>> points;
  for (const GroupSummary& g : groups)
    if (g.variant == variant && g.success_rate > 0)
      points.emplace_back(static_cast<double>(g.n), g.mean);
  return fit_exponent(points);
}

}  // namespace evoapsp
