// Test-only generators and naive oracles. Nothing here calls into the
// library's construction or verification code, so agreement is evidence.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "vpe/distance.hpp"
#include "vpe/objective.hpp"

namespace vpe::testing {

inline std::vector<std::string> numbered_ids(std::size_t n, const char* prefix = "x") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::vector<std::vector<double>> table(std::size_t n, double lo = 0.1, double hi = 10.0) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) m[i][j] = uniform(lo, hi);
    return m;
  }

  /// Values drawn from a small lattice so that ties are common.
  std::vector<double> lattice_values(std::size_t n, int levels = 4) {
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(index(static_cast<std::size_t>(levels)));
    return v;
  }

  std::vector<double> values(std::size_t n, double lo = 0.0, double hi = 100.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

using Matrix = std::vector<std::vector<double>>;

/// Plain transcription of the Borwein-Preiss iteration on a geometric
/// schedule with the exact (lowest index) picker. Returns the z_i and S_i.
struct NaiveTrace {
  std::vector<std::size_t> z;
  std::vector<std::vector<std::size_t>> sets;
};

inline NaiveTrace naive_bp(const Matrix& d, const std::vector<double>& f, double delta0, double gamma,
                           std::size_t z0) {
  const std::size_t n = f.size();
  NaiveTrace t;
  std::vector<double> g = f;  // f + sum_{k < i} delta_k d(., z_k)
  std::vector<bool> in(n, true);
  std::size_t zi = z0;
  for (std::size_t i = 0; i <= 10 * n; ++i) {
    const double delta = delta0 * std::pow(gamma, static_cast<double>(i));
    if (i > 0) {
      // Lowest-index minimizer of g over the current set.
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < n; ++z)
        if (in[z] && g[z] < best) best = g[z], zi = z;
    }
    std::vector<bool> next(n, false);
    std::vector<std::size_t> members;
    for (std::size_t z = 0; z < n; ++z) {
      if (!in[z]) continue;
      const double lhs = g[z] + delta * d[z][zi];
      if (lhs <= g[zi]) next[z] = true, members.push_back(z);
    }
    t.z.push_back(zi);
    t.sets.push_back(members);
    if (members.size() == 1) return t;
    for (std::size_t z = 0; z < n; ++z) g[z] += delta * d[z][zi];
    in = next;
  }
  return t;
}

inline NaiveTrace naive_ekeland(const Matrix& d, const std::vector<double>& f, double eps, std::size_t z0) {
  const std::size_t n = f.size();
  NaiveTrace t;
  std::vector<bool> in(n, true);
  std::size_t zi = z0;
  for (std::size_t i = 0; i <= 10 * n; ++i) {
    if (i > 0) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < n; ++z)
        if (in[z] && f[z] < best) best = f[z], zi = z;
    }
    std::vector<bool> next(n, false);
    std::vector<std::size_t> members;
    for (std::size_t z = 0; z < n; ++z)
      if (in[z] && f[z] + eps * d[z][zi] <= f[zi]) next[z] = true, members.push_back(z);
    t.z.push_back(zi);
    t.sets.push_back(members);
    if (members.size() == 1) return t;
    in = next;
  }
  return t;
}

/// Perturbed function of a finished BP run on a geometric schedule; the
/// iterates past the last recorded one all equal it.
inline double naive_bp_perturbed(const Matrix& d, const std::vector<double>& f, double delta0, double gamma,
                                 const std::vector<std::size_t>& z, std::size_t at) {
  double sum = f[at];
  const auto delta = [&](std::size_t k) { return delta0 * std::pow(gamma, static_cast<double>(k)); };
  for (std::size_t k = 0; k < z.size(); ++k) sum += delta(k) * d[at][z[k]];
  // Every later z_k equals the last one: sum_{k >= m} delta_k = delta_m / (1 - gamma).
  sum += delta(z.size()) / (1.0 - gamma) * d[at][z.back()];
  return sum;
}

inline Matrix matrix_of(const DistanceSpec& spec) {
  const std::size_t n = spec.size();
  Matrix m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = spec(i, j);
  return m;
}

}  // namespace vpe::testing
