#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pkt/kernel.hpp"
#include "pkt/types.hpp"

namespace pkt {

/// Square matrix of conditional affinities. Entry (i, j) is the probability
/// of sample i given the conditioning sample j, so column j is the
/// distribution of slot j. The diagonal is always 0.
///
/// Losses read p_{j|i} (probability of j given i) as entry (j, i).
class ProbabilityMatrix {
 public:
  /// Checks squareness, finite non-negative entries and a zero diagonal.
  /// Column sums are not checked: masked supervised slots are all-zero.
  explicit ProbabilityMatrix(Eigen::MatrixXd values);

  Eigen::Index size() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Largest |sum_{i != j} p(i, j) - 1| over all columns j.
  double max_slot_error() const;

 private:
  Eigen::MatrixXd values_;
};

/// K(x_i, x_j) for i != j, zero diagonal. Symmetric.
Eigen::MatrixXd kernel_matrix(const FeatureMatrix& feats, const KernelSpec& spec);

/// Kernel density estimate of the joint: K(x_i, x_j) / N off the diagonal.
Eigen::MatrixXd joint_density(const FeatureMatrix& feats, const KernelSpec& spec);

/// p(i | j) = K(x_i, x_j) / sum_{k != j} K(x_k, x_j).
/// Throws when N < 2 or a slot denominator falls below 1e-12.
ProbabilityMatrix conditional_probabilities(const FeatureMatrix& feats,
                                            const KernelSpec& spec);

/// Deterministic permutation of [0, n_total) for the given (seed, epoch).
std::vector<std::size_t> epoch_permutation(std::size_t n_total,
                                           std::uint64_t seed,
                                           std::uint64_t epoch);

/// Consecutive chunks of epoch_permutation(). A final chunk shorter than two
/// samples is dropped.
std::vector<std::vector<std::size_t>> sample_batches(std::size_t n_total,
                                                     std::size_t batch_size,
                                                     std::uint64_t seed,
                                                     std::uint64_t epoch);

/// Rows of feats selected by idx, in order.
FeatureMatrix gather_rows(const FeatureMatrix& feats,
                          const std::vector<std::size_t>& idx);

}  // namespace pkt
