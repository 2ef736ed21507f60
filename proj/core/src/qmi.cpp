#include "pkt/qmi.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace pkt {

namespace {

// Full Gram matrix, self-pairs included.
Eigen::MatrixXd gram(const FeatureMatrix& feats, const KernelSpec& spec) {
  const Eigen::Index n = feats.rows();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = kernel_eval(row_span(feats, i), row_span(feats, i), spec);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = kernel_eval(row_span(feats, i), row_span(feats, j), spec);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

}  // namespace

PotentialSet information_potentials(const FeatureMatrix& feats,
                                    std::span<const int> labels,
                                    const KernelSpec& spec) {
  validate_features(feats, 2, "information_potentials");
  if (static_cast<Eigen::Index>(labels.size()) != feats.rows()) {
    throw std::invalid_argument("information_potentials: label count does not match rows");
  }
  const Eigen::Index n = feats.rows();
  const double nd = static_cast<double>(n);
  const Eigen::MatrixXd g = gram(feats, spec);

  std::map<int, std::size_t> class_size;
  for (int l : labels) ++class_size[l];

  // Row-major traversal for every sum so a single class reproduces the
  // all-pairs total bit for bit.
  double in_class = 0.0;
  double all_pairs = 0.0;
  std::map<int, double> class_rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    double row_in = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      row += g(i, j);
      if (labels[j] == labels[i]) row_in += g(i, j);
    }
    all_pairs += row;
    in_class += row_in;
    class_rows[labels[i]] += row;
  }

  double prior_sq = 0.0;
  double btw = 0.0;
  for (const auto& [label, count] : class_size) {
    const double prior = static_cast<double>(count) / nd;
    prior_sq += prior * prior;
    btw += prior * class_rows[label];
  }

  PotentialSet out;
  out.v_in = in_class / (nd * nd);
  out.v_all = prior_sq * all_pairs / (nd * nd);
  out.v_btw = btw / (nd * nd);
  out.qmi = out.v_in + out.v_all - 2.0 * out.v_btw;
  return out;
}

EqualityReport potential_equality_check(const FeatureMatrix& teacher,
                                        const FeatureMatrix& student,
                                        const KernelSpec& spec_t,
                                        const KernelSpec& spec_s, double tol) {
  validate_features(teacher, 2, "potential_equality_check");
  validate_features(student, 2, "potential_equality_check");
  if (teacher.rows() != student.rows()) {
    throw std::invalid_argument("potential_equality_check: row count mismatch");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("potential_equality_check: tol < 0");

  const Eigen::MatrixXd gt = gram(teacher, spec_t);
  const Eigen::MatrixXd gs = gram(student, spec_s);
  EqualityReport r;
  r.max_deviation = (gt - gs).cwiseAbs().maxCoeff();
  r.within_tolerance = r.max_deviation <= tol;
  r.potential_bound = r.max_deviation;
  return r;
}

}  // namespace pkt
