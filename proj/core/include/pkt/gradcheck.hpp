#pragma once

#include <cstddef>
#include <cstdint>

#include "pkt/kernel.hpp"

namespace pkt {

struct GradCheckOptions {
  std::uint64_t seed = 1;
  std::size_t n = 8;
  std::size_t dim = 4;
  KernelSpec kernel = KernelSpec::cosine();
  double step = 1e-5;
  /// Negates the analytic gradient before comparing. Exists only so tests can
  /// confirm the check notices a wrong sign.
  bool flip_sign = false;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t coordinates = 0;
};

/// Tolerance used by the gradcheck command.
inline constexpr double kGradCheckTolerance = 1e-4;

/// Absolute-error scale below which gradient components are compared
/// absolutely rather than relatively.
inline constexpr double kGradCheckFloor = 1e-6;

/// Draws random student embeddings and teacher features, then compares the
/// analytic PKT gradient against central finite differences on every
/// coordinate. Relative error per coordinate is
/// |a - f| / max(|a|, |f|, kGradCheckFloor).
GradCheckResult run_gradient_check(const GradCheckOptions& opts);

}  // namespace pkt
