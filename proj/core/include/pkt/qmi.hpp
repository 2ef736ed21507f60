#pragma once

#include <span>

#include "pkt/kernel.hpp"
#include "pkt/types.hpp"

namespace pkt {

/// Quadratic mutual information between features and class labels, split into
/// its information potentials: qmi = v_in + v_all - 2 v_btw.
///
/// Unlike the conditional probabilities, every sum here includes self-pairs
/// K(x_i, x_i).
struct PotentialSet {
  double v_in = 0.0;
  double v_all = 0.0;
  double v_btw = 0.0;
  double qmi = 0.0;
};

/// With J_p the size of class p:
///   v_in  = 1/N^2 sum_p sum_{k,l in p} K(x_k, x_l)
///   v_all = 1/N^2 (sum_p (J_p/N)^2) sum_{k,l} K(x_k, x_l)
///   v_btw = 1/N^2 sum_p (J_p/N) sum_{j in p} sum_k K(x_j, x_k)
PotentialSet information_potentials(const FeatureMatrix& feats,
                                    std::span<const int> labels,
                                    const KernelSpec& spec);

struct EqualityReport {
  /// max_{i,j} |K(x_i, x_j; spec_t) - K(y_i, y_j; spec_s)|, self-pairs included.
  double max_deviation = 0.0;
  bool within_tolerance = false;
  /// Any labeling's teacher and student potentials differ by at most this
  /// much each (every potential is a sub-convex combination of kernel values).
  double potential_bound = 0.0;
};

EqualityReport potential_equality_check(const FeatureMatrix& teacher,
                                        const FeatureMatrix& student,
                                        const KernelSpec& spec_t,
                                        const KernelSpec& spec_s, double tol);

}  // namespace pkt
