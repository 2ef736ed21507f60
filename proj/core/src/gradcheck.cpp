#include "pkt/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pkt/affinity.hpp"
#include "pkt/divergence.hpp"
#include "pkt/rng.hpp"

namespace pkt {

GradCheckResult run_gradient_check(const GradCheckOptions& opts) {
  if (opts.n < 2 || opts.dim < 1) {
    throw std::invalid_argument("gradient check: need n >= 2 and dim >= 1");
  }
  Rng rng(opts.seed);
  const auto n = static_cast<Eigen::Index>(opts.n);
  const auto dim = static_cast<Eigen::Index>(opts.dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

  FeatureMatrix y(n, dim);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = scale * rng.normal();
  FeatureMatrix teacher(n, 5);
  for (Eigen::Index i = 0; i < teacher.size(); ++i) teacher.data()[i] = rng.normal();
  const ProbabilityMatrix p = conditional_probabilities(teacher, KernelSpec::cosine());

  LossReport analytic = pkt_loss_and_grad(y, p, opts.kernel);
  if (opts.flip_sign) analytic.grad_y = -analytic.grad_y;

  auto loss_at = [&](const FeatureMatrix& yy) {
    return kl_loss(p, conditional_probabilities(yy, opts.kernel));
  };

  GradCheckResult result;
  FeatureMatrix probe = y;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double orig = probe.data()[i];
    probe.data()[i] = orig + opts.step;
    const double up = loss_at(probe);
    probe.data()[i] = orig - opts.step;
    const double down = loss_at(probe);
    probe.data()[i] = orig;

    const double numeric = (up - down) / (2.0 * opts.step);
    const double a = analytic.grad_y.data()[i];
    const double abs_err = std::abs(a - numeric);
    const double denom = std::max({std::abs(a), std::abs(numeric), kGradCheckFloor});
    result.max_abs_error = std::max(result.max_abs_error, abs_err);
    result.max_rel_error = std::max(result.max_rel_error, abs_err / denom);
    ++result.coordinates;
  }
  return result;
}

}  // namespace pkt
