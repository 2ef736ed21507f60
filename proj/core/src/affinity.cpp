#include "pkt/affinity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pkt/rng.hpp"

namespace pkt {

void validate_features(const FeatureMatrix& m, Eigen::Index min_rows,
                       const char* what) {
  if (m.rows() < min_rows) {
    throw std::invalid_argument(std::string(what) + ": need at least " +
                                std::to_string(min_rows) + " rows, got " +
                                std::to_string(m.rows()));
  }
  if (m.cols() < 1) throw std::invalid_argument(std::string(what) + ": zero columns");
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

ProbabilityMatrix::ProbabilityMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("probability matrix must be square");
  }
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw std::invalid_argument("probability matrix entries must be finite and >= 0");
  }
  if (values_.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("probability matrix diagonal must be zero");
  }
}

double ProbabilityMatrix::max_slot_error() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    worst = std::max(worst, std::abs(values_.col(j).sum() - 1.0));
  }
  return worst;
}

Eigen::MatrixXd kernel_matrix(const FeatureMatrix& feats, const KernelSpec& spec) {
  const Eigen::Index n = feats.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = kernel_eval(row_span(feats, i), row_span(feats, j), spec);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::MatrixXd joint_density(const FeatureMatrix& feats, const KernelSpec& spec) {
  validate_features(feats, 2, "joint_density");
  return kernel_matrix(feats, spec) / static_cast<double>(feats.rows());
}

ProbabilityMatrix conditional_probabilities(const FeatureMatrix& feats,
                                            const KernelSpec& spec) {
  validate_features(feats, 2, "conditional_probabilities");
  Eigen::MatrixXd k = kernel_matrix(feats, spec);
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    const double denom = k.col(j).sum();
    if (!(denom >= 1e-12)) {
      throw std::invalid_argument("conditional_probabilities: degenerate slot " +
                                  std::to_string(j) + " (kernel mass " +
                                  std::to_string(denom) + ")");
    }
    k.col(j) /= denom;
  }
  return ProbabilityMatrix(std::move(k));
}

std::vector<std::size_t> epoch_permutation(std::size_t n_total, std::uint64_t seed,
                                           std::uint64_t epoch) {
  std::vector<std::size_t> perm(n_total);
  for (std::size_t i = 0; i < n_total; ++i) perm[i] = i;
  Rng rng{seed, epoch};
  for (std::size_t i = n_total; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::vector<std::vector<std::size_t>> sample_batches(std::size_t n_total,
                                                     std::size_t batch_size,
                                                     std::uint64_t seed,
                                                     std::uint64_t epoch) {
  if (batch_size < 2) {
    throw std::invalid_argument("sample_batches: batch size must be at least 2");
  }
  if (batch_size > n_total) {
    throw std::invalid_argument("sample_batches: batch size " +
                                std::to_string(batch_size) + " exceeds " +
                                std::to_string(n_total) + " samples");
  }
  const auto perm = epoch_permutation(n_total, seed, epoch);
  std::vector<std::vector<std::size_t>> chunks;
  for (std::size_t start = 0; start < n_total; start += batch_size) {
    const std::size_t end = std::min(start + batch_size, n_total);
    if (end - start < 2) break;
    chunks.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(start),
                        perm.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return chunks;
}

FeatureMatrix gather_rows(const FeatureMatrix& feats,
                          const std::vector<std::size_t>& idx) {
  FeatureMatrix out(static_cast<Eigen::Index>(idx.size()), feats.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = feats.row(static_cast<Eigen::Index>(idx[r]));
  }
  return out;
}

}  // namespace pkt
