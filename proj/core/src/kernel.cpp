#include "pkt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pkt {

namespace {

void require_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("kernel: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw std::invalid_argument("kernel: empty vectors");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double guarded_norm(std::span<const double> a) {
  return std::max(std::sqrt(dot(a, a)), kCosineNormFloor);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

KernelSpec KernelSpec::gaussian(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("kernel: gaussian width must be positive, got " +
                                std::to_string(width));
  }
  return KernelSpec(KernelFamily::Gaussian, width);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b);
  const double c = dot(a, b) / (guarded_norm(a) * guarded_norm(b));
  return std::clamp(c, -1.0, 1.0);
}

double kernel_eval(std::span<const double> a, std::span<const double> b,
                   const KernelSpec& spec) {
  require_same_dim(a, b);
  switch (spec.family()) {
    case KernelFamily::Cosine:
      return 0.5 * (cosine_similarity(a, b) + 1.0);
    case KernelFamily::Gaussian:
      return std::exp(-squared_distance(a, b) / spec.width());
  }
  throw std::logic_error("kernel: unknown family");
}

void kernel_grad_first(std::span<const double> a, std::span<const double> b,
                       const KernelSpec& spec, std::span<double> out) {
  require_same_dim(a, b);
  if (out.size() != a.size()) throw std::invalid_argument("kernel: bad output size");

  switch (spec.family()) {
    case KernelFamily::Cosine: {
      // K = (a.b / (na nb) + 1) / 2 with na = max(|a|, floor). Below the floor
      // na is constant and its derivative vanishes.
      const double raw_na = std::sqrt(dot(a, a));
      const double na = std::max(raw_na, kCosineNormFloor);
      const double nb = guarded_norm(b);
      const double ab = dot(a, b);
      const double inv = 1.0 / (na * nb);
      const double norm_term = raw_na >= kCosineNormFloor ? ab * inv / (na * na) : 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = 0.5 * (b[i] * inv - norm_term * a[i]);
      }
      return;
    }
    case KernelFamily::Gaussian: {
      const double k = std::exp(-squared_distance(a, b) / spec.width());
      const double scale = -2.0 * k / spec.width();
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = scale * (a[i] - b[i]);
      return;
    }
  }
  throw std::logic_error("kernel: unknown family");
}

}  // namespace pkt
