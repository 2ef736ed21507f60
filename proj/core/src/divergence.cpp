#include "pkt/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pkt {

namespace {

void require_same_size(const ProbabilityMatrix& p, const ProbabilityMatrix& q,
                       const char* what) {
  if (p.size() != q.size()) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()) + ")");
  }
}

double clamp_probability(double q) { return std::clamp(q, kProbabilityFloor, 1.0); }

// Entry (t, c) of every matrix is p(t | c); the loss sums over all off-diagonal
// entries, so the iteration order below is the same for every caller.
double kl_sum(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  const Eigen::Index n = p.rows();
  double total = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t == c) continue;
      const double pv = p(t, c);
      if (pv <= 0.0) continue;
      total += pv * std::log(pv / clamp_probability(q(t, c)));
    }
  }
  return total;
}

// Accumulates the loss value and dL/dK for target weights `target` (already
// combined across terms) against student kernel matrix k.
LossReport loss_and_grad_impl(const FeatureMatrix& y, const KernelSpec& spec,
                              const Eigen::MatrixXd& target, double value) {
  const Eigen::Index n = y.rows();
  const Eigen::MatrixXd k = kernel_matrix(y, spec);

  // L = -sum_c sum_{t != c} T(t,c) log max(K(t,c)/S_c, floor) + const, with
  // S_c the column sum. Clamped entries carry no gradient. For unclamped:
  //   dL/dK(t,c) = -T(t,c)/K(t,c) + (sum_{unclamped t'} T(t',c)) / S_c.
  Eigen::MatrixXd dk = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double s = k.col(c).sum();
    if (!(s >= 1e-12)) {
      throw std::invalid_argument("pkt_loss_and_grad: degenerate student slot " +
                                  std::to_string(c));
    }
    double active_mass = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t == c) continue;
      const double tv = target(t, c);
      if (tv <= 0.0 || k(t, c) / s < kProbabilityFloor) continue;
      active_mass += tv;
      dk(t, c) -= tv / k(t, c);
    }
    if (active_mass == 0.0) continue;
    const double shared = active_mass / s;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t != c) dk(t, c) += shared;
    }
  }

  // K(t,c) and K(c,t) are the same function of (y_t, y_c).
  LossReport report;
  report.value = value;
  report.n_pairs = static_cast<std::size_t>(n * (n - 1));
  report.grad_y = FeatureMatrix::Zero(n, y.cols());
  std::vector<double> g(static_cast<std::size_t>(y.cols()));
  for (Eigen::Index a = 0; a < n; ++a) {
    auto out = row_span(report.grad_y, a);
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      const double coeff = dk(a, b) + dk(b, a);
      if (coeff == 0.0) continue;
      kernel_grad_first(row_span(y, a), row_span(y, b), spec, g);
      for (std::size_t d = 0; d < g.size(); ++d) out[d] += coeff * g[d];
    }
  }
  return report;
}

}  // namespace

double kl_loss(const ProbabilityMatrix& p, const ProbabilityMatrix& q) {
  require_same_size(p, q, "kl_loss");
  return kl_sum(p.values(), q.values());
}

double quadratic_loss(const ProbabilityMatrix& p, const ProbabilityMatrix& q) {
  require_same_size(p, q, "quadratic_loss");
  const Eigen::Index n = p.size();
  double total = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t == c) continue;
      const double d = p(t, c) - q(t, c);
      total += d * d;
    }
  }
  return total;
}

SupervisedTargets supervised_targets(std::span<const int> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (n < 2) throw std::invalid_argument("supervised_targets: need at least 2 labels");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> active(labels.size(), false);
  bool any = false;
  for (Eigen::Index c = 0; c < n; ++c) {
    std::size_t partners = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t != c && labels[t] == labels[c]) ++partners;
    }
    if (partners == 0) continue;
    const double w = 1.0 / static_cast<double>(partners);
    for (Eigen::Index t = 0; t < n; ++t) {
      if (t != c && labels[t] == labels[c]) m(t, c) = w;
    }
    active[c] = true;
    any = true;
  }
  if (!any) {
    throw std::invalid_argument("supervised_targets: no sample has a same-class partner");
  }
  return {ProbabilityMatrix(std::move(m)), std::move(active)};
}

LossReport pkt_loss_and_grad(const FeatureMatrix& y, const ProbabilityMatrix& p_teacher,
                             const KernelSpec& student_spec) {
  validate_features(y, 2, "pkt_loss_and_grad");
  if (p_teacher.size() != y.rows()) {
    throw std::invalid_argument("pkt_loss_and_grad: teacher matrix does not match batch");
  }
  const ProbabilityMatrix q = conditional_probabilities(y, student_spec);
  return loss_and_grad_impl(y, student_spec, p_teacher.values(), kl_loss(p_teacher, q));
}

LossReport pkt_loss_and_grad(const FeatureMatrix& y, const ProbabilityMatrix& p_teacher,
                             const KernelSpec& student_spec,
                             const ProbabilityMatrix& sup_targets, double sup_weight) {
  if (!(sup_weight >= 0.0) || !std::isfinite(sup_weight)) {
    throw std::invalid_argument("pkt_loss_and_grad: supervised weight must be >= 0");
  }
  if (sup_weight == 0.0) return pkt_loss_and_grad(y, p_teacher, student_spec);

  validate_features(y, 2, "pkt_loss_and_grad");
  if (p_teacher.size() != y.rows() || sup_targets.size() != y.rows()) {
    throw std::invalid_argument("pkt_loss_and_grad: target matrices do not match batch");
  }
  const ProbabilityMatrix q = conditional_probabilities(y, student_spec);
  const double value = kl_loss(p_teacher, q) + sup_weight * kl_loss(sup_targets, q);
  const Eigen::MatrixXd combined = p_teacher.values() + sup_weight * sup_targets.values();
  return loss_and_grad_impl(y, student_spec, combined, value);
}

}  // namespace pkt
