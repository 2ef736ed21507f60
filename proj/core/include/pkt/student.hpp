#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pkt/types.hpp"

namespace pkt {

struct DenseLayer {
  /// out x in
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

/// Fully connected network: ReLU on hidden layers, identity on the output.
class StudentModel {
 public:
  /// All-zero parameters. dims = {input, hidden..., output}, at least two
  /// entries, all positive.
  explicit StudentModel(std::vector<std::size_t> dims);

  /// Glorot-uniform weights, zero biases.
  static StudentModel glorot(std::vector<std::size_t> dims, std::uint64_t seed);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t input_dim() const { return dims_.front(); }
  std::size_t output_dim() const { return dims_.back(); }
  std::size_t parameter_count() const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<DenseLayer> layers_;
};

/// Parameter gradients, shaped like StudentModel::layers().
using ModelGradients = std::vector<DenseLayer>;

FeatureMatrix forward(const StudentModel& model, const FeatureMatrix& batch);

/// Backpropagates dL/dY through the network evaluated at batch.
ModelGradients backward(const StudentModel& model, const FeatureMatrix& batch,
                        const FeatureMatrix& grad_y);

struct AdamState {
  explicit AdamState(std::size_t n_params, double lr = 1e-4, double beta1 = 0.9,
                     double beta2 = 0.999, double eps = 1e-8);

  std::size_t step = 0;
  double lr;
  double beta1;
  double beta2;
  double eps;
  std::vector<double> m;
  std::vector<double> v;
};

/// One bias-corrected Adam update of a flat parameter vector.
void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads);

/// One Adam update of every layer; the state must have parameter_count() slots.
void adam_step(AdamState& state, StudentModel& model, const ModelGradients& grads);

/// Text format: "PKT-MODEL v1", "dims d0 ... dk", then for every layer its
/// weight rows followed by one bias row, 17 significant digits.
void write_model(std::ostream& out, const StudentModel& model);
StudentModel read_model(std::istream& in);

}  // namespace pkt
