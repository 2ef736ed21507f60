#pragma once

// Test-only reference implementations. These are deliberately naive direct
// transcriptions of the formulas and share no code with pkt::core beyond the
// FeatureMatrix/KernelSpec value types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "pkt/kernel.hpp"
#include "pkt/types.hpp"

namespace pkt::oracle {

using Dense = std::vector<std::vector<double>>;

inline double kernel(const FeatureMatrix& x, int i, const FeatureMatrix& y, int j,
                     const KernelSpec& spec) {
  double dot = 0, nx = 0, ny = 0, dist = 0;
  for (int d = 0; d < x.cols(); ++d) {
    dot += x(i, d) * y(j, d);
    nx += x(i, d) * x(i, d);
    ny += y(j, d) * y(j, d);
    dist += (x(i, d) - y(j, d)) * (x(i, d) - y(j, d));
  }
  if (spec.family() == KernelFamily::Gaussian) return std::exp(-dist / spec.width());
  const double c = dot / (std::max(std::sqrt(nx), 1e-8) * std::max(std::sqrt(ny), 1e-8));
  return 0.5 * (std::clamp(c, -1.0, 1.0) + 1.0);
}

/// out[i][j] = p(i | j).
inline Dense conditional(const FeatureMatrix& x, const KernelSpec& spec) {
  const int n = static_cast<int>(x.rows());
  Dense out(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    double denom = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k != j) denom += kernel(x, k, x, j, spec);
    }
    for (int i = 0; i < n; ++i) {
      if (i != j) out[i][j] = kernel(x, i, x, j, spec) / denom;
    }
  }
  return out;
}

/// sum_i sum_{j != i} p_{j|i} log(p_{j|i} / clamp(q_{j|i})), with p_{j|i} = p[j][i].
inline double kl(const Dense& p, const Dense& q) {
  const int n = static_cast<int>(p.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || p[j][i] == 0.0) continue;
      s += p[j][i] * std::log(p[j][i] / std::clamp(q[j][i], 1e-7, 1.0));
    }
  }
  return s;
}

/// Central finite differences of f at every coordinate of y.
inline FeatureMatrix fd_gradient(const std::function<double(const FeatureMatrix&)>& f,
                                 FeatureMatrix y, double h) {
  FeatureMatrix g(y.rows(), y.cols());
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      const double orig = y(r, c);
      y(r, c) = orig + h;
      const double up = f(y);
      y(r, c) = orig - h;
      const double down = f(y);
      y(r, c) = orig;
      g(r, c) = (up - down) / (2 * h);
    }
  }
  return g;
}

inline double max_rel_error(const FeatureMatrix& a, const FeatureMatrix& b,
                            double floor = 1e-6) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a.data()[i], y = b.data()[i];
    worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor}));
  }
  return worst;
}

struct Potentials {
  double v_in, v_all, v_btw;
};

/// Triple sums exactly as written: classes p with members x_{pk}.
inline Potentials potentials(const FeatureMatrix& x, const std::vector<int>& labels,
                             const KernelSpec& spec) {
  const int n = static_cast<int>(x.rows());
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < n; ++i) members[labels[i]].push_back(i);
  const double nn = static_cast<double>(n) * n;

  double v_in = 0.0;
  for (const auto& [c, idx] : members) {
    for (int k : idx) {
      for (int l : idx) v_in += kernel(x, k, x, l, spec);
    }
  }
  double prior_sq = 0.0;
  for (const auto& [c, idx] : members) {
    const double pr = static_cast<double>(idx.size()) / n;
    prior_sq += pr * pr;
  }
  double all = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) all += kernel(x, k, x, l, spec);
  }
  double v_btw = 0.0;
  for (const auto& [c, idx] : members) {
    const double pr = static_cast<double>(idx.size()) / n;
    for (int j : idx) {
      for (int k = 0; k < n; ++k) v_btw += pr * kernel(x, j, x, k, spec);
    }
  }
  return {v_in / nn, prior_sq * all / nn, v_btw / nn};
}

/// 11-point interpolated AP using floating recall levels and explicit
/// (recall, precision) pairs.
inline double ap_11pt(const std::vector<bool>& rel, int n_relevant) {
  std::vector<std::pair<double, double>> pr;
  int hits = 0;
  for (std::size_t k = 0; k < rel.size(); ++k) {
    hits += rel[k] ? 1 : 0;
    pr.emplace_back(static_cast<double>(hits) / n_relevant,
                    static_cast<double>(hits) / static_cast<double>(k + 1));
  }
  double total = 0.0;
  for (int level = 0; level <= 10; ++level) {
    const double r = level / 10.0;
    double best = 0.0;
    for (const auto& [recall, precision] : pr) {
      if (recall >= r - 1e-12) best = std::max(best, precision);
    }
    total += best;
  }
  return total / 11.0;
}

}  // namespace pkt::oracle
