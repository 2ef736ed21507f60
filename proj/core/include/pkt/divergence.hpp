#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pkt/affinity.hpp"
#include "pkt/kernel.hpp"
#include "pkt/types.hpp"

namespace pkt {

/// Student conditionals are clamped to [kProbabilityFloor, 1] inside the log.
inline constexpr double kProbabilityFloor = 1e-7;

/// sum_i sum_{j != i} p_{j|i} log(p_{j|i} / q_{j|i}). Zero p-entries add 0.
double kl_loss(const ProbabilityMatrix& p, const ProbabilityMatrix& q);

/// sum_i sum_{j != i} (p_{j|i} - q_{j|i})^2.
double quadratic_loss(const ProbabilityMatrix& p, const ProbabilityMatrix& q);

struct SupervisedTargets {
  /// Uniform over same-class partners in every active slot; zero columns
  /// elsewhere.
  ProbabilityMatrix targets;
  /// active[j] is false when sample j has no same-class partner in the batch.
  std::vector<bool> active;
};

/// Label-derived target distribution. Throws if no sample has a same-class
/// partner.
SupervisedTargets supervised_targets(std::span<const int> labels);

struct LossReport {
  double value = 0.0;
  /// dL/dY, same shape as the student embeddings.
  FeatureMatrix grad_y;
  std::size_t n_pairs = 0;
};

/// KL(P || Q(y)) and its exact gradient with respect to y, where
/// Q(y) = conditional_probabilities(y, student_spec).
LossReport pkt_loss_and_grad(const FeatureMatrix& y,
                             const ProbabilityMatrix& p_teacher,
                             const KernelSpec& student_spec);

/// As above plus sup_weight * KL(sup_targets || Q(y)).
LossReport pkt_loss_and_grad(const FeatureMatrix& y,
                             const ProbabilityMatrix& p_teacher,
                             const KernelSpec& student_spec,
                             const ProbabilityMatrix& sup_targets,
                             double sup_weight);

}  // namespace pkt
