// Test-only reference computations. Nothing here calls the code paths it
// is used to check.

#ifndef CDCOPT_TESTS_ORACLES_HPP
#define CDCOPT_TESTS_ORACLES_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdcopt/milp.hpp"
#include "cdcopt/model.hpp"

namespace cdcopt::testing {

// The three-node fixture used throughout: k=1 on B is optimal for D=12.
inline Fleet fleet_f3() {
  return Fleet({{"A", 1.0, 1.0, 1.0, 1.0},
                {"B", 0.5, 1.0, 2.0, 1.0},
                {"C", 10.0, 1.0, 100.0, 1.0}});
}

// Two identical nodes; k=2 is optimal for D=10.
inline Fleet fleet_f2() {
  return Fleet({{"n1", 0.1, 1.0, 1.0, 1.0}, {"n2", 0.1, 1.0, 1.0, 1.0}});
}

// Direct transcription of 2 tau/p + D/(k eta) + D/(k eta alpha).
inline double node_time_formula(const NodeProfile& n, double D, int k) {
  return 2.0 * n.tau / n.p + D / (k * n.eta) + D / (k * n.eta * n.alpha);
}

// Minimum over every non-empty designated subset of max node time.
inline double enumerate_optimum(const Fleet& fleet, double D) {
  const std::size_t N = fleet.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
    int k = 0;
    for (std::size_t i = 0; i < N; ++i) k += (mask >> i) & 1;
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if ((mask >> i) & 1) worst = std::max(worst, node_time_formula(fleet[i], D, k));
    }
    best = std::min(best, worst);
  }
  return best;
}

struct RandomFleetParams {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 12;
  double tau_lo = 0.01, tau_hi = 10.0;
  double eta_lo = 0.1, eta_hi = 100.0;
  double p_lo = 0.5, p_hi = 1.0;
  double alpha_lo = 0.5, alpha_hi = 4.0;
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline Fleet random_fleet(std::mt19937_64& rng, const RandomFleetParams& prm = {}) {
  std::uniform_int_distribution<std::size_t> count(prm.min_nodes, prm.max_nodes);
  std::uniform_real_distribution<double> p(prm.p_lo, prm.p_hi);
  std::uniform_real_distribution<double> alpha(prm.alpha_lo, prm.alpha_hi);
  const std::size_t n = count(rng);
  std::vector<NodeProfile> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    NodeProfile node;
    node.id = "r" + std::to_string(i);
    node.tau = log_uniform(rng, prm.tau_lo, prm.tau_hi);
    node.eta = log_uniform(rng, prm.eta_lo, prm.eta_hi);
    node.p = std::max(p(rng), 1e-6);
    node.alpha = alpha(rng);
    nodes.push_back(node);
  }
  return Fleet(std::move(nodes));
}

inline double random_task_size(std::mt19937_64& rng) {
  return log_uniform(rng, 0.1, 1e4);
}

// Plain bisection for w <= -1 with w e^w = x, on [-800, -1].
inline double lambert_w_m1_bisect(double x) {
  double lo = -800.0, hi = -1.0;  // f(lo) > 0 >= f(hi), f decreasing
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid * std::exp(mid) - x > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 200000) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Exhaustive search over the model's binaries (c, x, y) with early pruning
// on rows that involve only binaries. For each binary point, n and k come
// from rows count_n and k_onehot, and each t_i takes the smallest value its
// time row and bounds allow; T = max t_i. Every candidate is then checked against
// every model row. Returns the best objective, or +inf if none is feasible.
inline double enumerate_milp(const milp::MilpModel& model) {
  const std::size_t N = model.node_count();
  std::vector<double> v(model.variables.size(), 0.0);
  const auto find_row = [&](const std::string& name) -> const milp::Constraint& {
    for (const auto& r : model.constraints) {
      if (r.name == name) return r;
    }
    throw std::runtime_error("row " + name + " missing");
  };
  std::vector<const milp::Constraint*> time_rows(N);
  for (std::size_t i = 0; i < N; ++i) {
    time_rows[i] = &find_row("time_" + std::to_string(i + 1));
  }

  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t limit = std::uint64_t{1} << N;
  for (std::uint64_t ym = 1; ym < limit; ++ym) {
    if (std::popcount(ym) != 1) continue;  // onehot only involves y
    int k = 0;
    for (std::size_t j = 0; j < N; ++j) {
      v[model.y(j)] = (ym >> j) & 1;
      if ((ym >> j) & 1) k += static_cast<int>(j + 1);  // k_onehot
    }
    v[model.k()] = k;
    for (std::uint64_t xm = 0; xm < limit; ++xm) {
      if (std::popcount(xm) != k) continue;  // count_k involves x and k
      for (std::size_t i = 0; i < N; ++i) v[model.x(i)] = (xm >> i) & 1;
      // Any c superset of x; iterate supersets of xm.
      const std::uint64_t free = (limit - 1) & ~xm;
      for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
        const std::uint64_t cm = xm | sub;
        for (std::size_t i = 0; i < N; ++i) v[model.c(i)] = (cm >> i) & 1;
        v[model.n()] = std::popcount(cm);  // count_n
        double T = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          double other = 0.0, tcoef = 0.0;
          for (const auto& term : time_rows[i]->terms) {
            if (term.var == model.t(i)) {
              tcoef = term.coef;
            } else {
              other += term.coef * v[term.var];
            }
          }
          const double ti = std::max(model.variables[model.t(i)].lower,
                                     (time_rows[i]->rhs - other) / tcoef);
          v[model.t(i)] = ti;
          T = std::max(T, ti);
        }
        v[model.T()] = T;
        bool ok = true;
        for (const auto& row : model.constraints) {
          if (!milp::satisfied(row, v, 1e-12)) {
            ok = false;
            break;
          }
        }
        for (std::size_t var = 0; ok && var < v.size(); ++var) {
          const auto& decl = model.variables[var];
          if (v[var] < decl.lower - 1e-12 || v[var] > decl.upper + 1e-12) ok = false;
        }
        if (ok) {
          double obj = 0.0;
          for (const auto& term : model.objective) obj += term.coef * v[term.var];
          best = std::min(best, obj);
        }
        if (sub == 0) break;
      }
    }
  }
  return best;
}

}  // namespace cdcopt::testing

#endif  // CDCOPT_TESTS_ORACLES_HPP
