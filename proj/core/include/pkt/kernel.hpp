#pragma once

#include <span>

namespace pkt {

enum class KernelFamily { Cosine, Gaussian };

/// Kernel family plus, for the Gaussian kernel, its width. The width is the
/// whole denominator of the exponent (2 sigma^2), never sigma itself.
class KernelSpec {
 public:
  static KernelSpec cosine() { return KernelSpec(KernelFamily::Cosine, 0.0); }
  static KernelSpec gaussian(double width);

  KernelFamily family() const { return family_; }
  /// Zero for the cosine kernel.
  double width() const { return width_; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily family, double width) : family_(family), width_(width) {}

  KernelFamily family_;
  double width_;
};

/// Norms below this are treated as this value in the cosine denominator, so a
/// zero vector has similarity 0.5 to everything.
inline constexpr double kCosineNormFloor = 1e-8;

/// Affinity in [0, 1].
///   cosine:   (a.b / (|a| |b|) + 1) / 2
///   gaussian: exp(-|a - b|^2 / width)
double kernel_eval(std::span<const double> a, std::span<const double> b,
                   const KernelSpec& spec);

/// Writes dK(a, b)/da into out (same length as a).
void kernel_grad_first(std::span<const double> a, std::span<const double> b,
                       const KernelSpec& spec, std::span<double> out);

/// Plain cosine similarity in [-1, 1] with the same norm floor as the kernel.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace pkt
