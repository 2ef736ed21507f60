#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace pkt {

/// N x D sample representations, one embedding per row. Row-major so a row is
/// a contiguous span.
using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised when an input file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::span<const double> row_span(const FeatureMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

inline std::span<double> row_span(FeatureMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

/// Throws std::invalid_argument unless m has at least min_rows rows, at least
/// one column and only finite entries.
void validate_features(const FeatureMatrix& m, Eigen::Index min_rows,
                       const char* what);

}  // namespace pkt
