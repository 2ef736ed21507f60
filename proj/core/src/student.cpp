#include "pkt/student.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pkt/io.hpp"
#include "pkt/rng.hpp"

namespace pkt {

namespace {

using RowMatrix = FeatureMatrix;

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("student: need at least two layer dims");
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("student: layer dims must be positive");
  }
}

// Pre-activations z_l = a_{l-1} W_l^T + b_l and activations a_l for every layer.
struct Trace {
  std::vector<RowMatrix> pre;
  std::vector<RowMatrix> act;
};

Trace run_forward(const StudentModel& model, const FeatureMatrix& batch) {
  if (batch.cols() != static_cast<Eigen::Index>(model.input_dim())) {
    throw std::invalid_argument("forward: input has " + std::to_string(batch.cols()) +
                                " columns, model expects " +
                                std::to_string(model.input_dim()));
  }
  Trace tr;
  const auto& layers = model.layers();
  tr.act.push_back(batch);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    RowMatrix z = tr.act.back() * layers[l].weight.transpose();
    z.rowwise() += layers[l].bias.transpose();
    tr.pre.push_back(z);
    if (l + 1 < layers.size()) {
      tr.act.push_back(z.cwiseMax(0.0));
    } else {
      tr.act.push_back(std::move(z));
    }
  }
  return tr;
}

void adam_update(AdamState& s, std::size_t offset, double* params, const double* grads,
                 std::size_t count) {
  const auto t = static_cast<double>(s.step);
  const double c1 = 1.0 - std::pow(s.beta1, t);
  const double c2 = 1.0 - std::pow(s.beta2, t);
  for (std::size_t i = 0; i < count; ++i) {
    double& m = s.m[offset + i];
    double& v = s.v[offset + i];
    const double g = grads[i];
    m = s.beta1 * m + (1.0 - s.beta1) * g;
    v = s.beta2 * v + (1.0 - s.beta2) * g * g;
    const double m_hat = m / c1;
    const double v_hat = v / c2;
    params[i] -= s.lr * m_hat / (std::sqrt(v_hat) + s.eps);
  }
}

std::string next_content_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  throw std::invalid_argument(std::string("model file: missing ") + what);
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const char* what) {
  std::istringstream ss(line);
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) {
    vals.push_back(parse_double(tok));
  }
  if (vals.size() != expected) {
    throw std::invalid_argument(std::string("model file: ") + what + " has " +
                                std::to_string(vals.size()) + " values, expected " +
                                std::to_string(expected));
  }
  return vals;
}

}  // namespace

StudentModel::StudentModel(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  check_dims(dims_);
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(dims_[l]);
    const auto out = static_cast<Eigen::Index>(dims_[l + 1]);
    layers_.push_back({Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)});
  }
}

StudentModel StudentModel::glorot(std::vector<std::size_t> dims, std::uint64_t seed) {
  StudentModel model(std::move(dims));
  Rng rng(seed);
  for (auto& layer : model.layers_) {
    const double fan = static_cast<double>(layer.weight.rows() + layer.weight.cols());
    const double limit = std::sqrt(6.0 / fan);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = rng.uniform(-limit, limit);
      }
    }
  }
  return model;
}

std::size_t StudentModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

FeatureMatrix forward(const StudentModel& model, const FeatureMatrix& batch) {
  return run_forward(model, batch).act.back();
}

ModelGradients backward(const StudentModel& model, const FeatureMatrix& batch,
                        const FeatureMatrix& grad_y) {
  if (grad_y.rows() != batch.rows() ||
      grad_y.cols() != static_cast<Eigen::Index>(model.output_dim())) {
    throw std::invalid_argument("backward: grad_y shape does not match the forward output");
  }
  const Trace tr = run_forward(model, batch);
  const auto& layers = model.layers();

  ModelGradients grads(layers.size());
  RowMatrix delta = grad_y;  // dL/dz of the current layer
  for (std::size_t l = layers.size(); l-- > 0;) {
    grads[l].weight = delta.transpose() * tr.act[l];
    grads[l].bias = delta.colwise().sum().transpose();
    if (l == 0) break;
    RowMatrix upstream = delta * layers[l].weight;
    delta = upstream.cwiseProduct((tr.pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

AdamState::AdamState(std::size_t n_params, double lr_, double beta1_, double beta2_,
                     double eps_)
    : lr(lr_), beta1(beta1_), beta2(beta2_), eps(eps_), m(n_params, 0.0), v(n_params, 0.0) {
  if (!(lr > 0.0)) throw std::invalid_argument("adam: learning rate must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("adam: betas must lie in (0, 1)");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("adam: eps must be positive");
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw std::invalid_argument("adam: parameter/gradient/state size mismatch");
  }
  ++state.step;
  adam_update(state, 0, params.data(), grads.data(), params.size());
}

void adam_step(AdamState& state, StudentModel& model, const ModelGradients& grads) {
  auto& layers = model.layers();
  if (grads.size() != layers.size() || state.m.size() != model.parameter_count()) {
    throw std::invalid_argument("adam: gradient/state does not match model");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (grads[l].weight.rows() != layers[l].weight.rows() ||
        grads[l].weight.cols() != layers[l].weight.cols() ||
        grads[l].bias.size() != layers[l].bias.size()) {
      throw std::invalid_argument("adam: gradient shape mismatch in layer " +
                                  std::to_string(l));
    }
  }
  ++state.step;
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto& w = layers[l].weight;
    auto& b = layers[l].bias;
    const auto nw = static_cast<std::size_t>(w.size());
    const auto nb = static_cast<std::size_t>(b.size());
    adam_update(state, offset, w.data(), grads[l].weight.data(), nw);
    offset += nw;
    adam_update(state, offset, b.data(), grads[l].bias.data(), nb);
    offset += nb;
  }
}

void write_model(std::ostream& out, const StudentModel& model) {
  out << "PKT-MODEL v1\n";
  out << "dims";
  for (std::size_t d : model.dims()) out << ' ' << d;
  out << '\n';
  for (const auto& layer : model.layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        if (c) out << ' ';
        out << format_double(layer.weight(r, c));
      }
      out << '\n';
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      if (r) out << ' ';
      out << format_double(layer.bias(r));
    }
    out << '\n';
  }
}

StudentModel read_model(std::istream& in) {
  std::string header = next_content_line(in, "header");
  while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.pop_back();
  if (header != "PKT-MODEL v1") {
    throw std::invalid_argument("model file: expected 'PKT-MODEL v1' header");
  }
  std::istringstream dims_line(next_content_line(in, "dims line"));
  std::string tag;
  dims_line >> tag;
  if (tag != "dims") throw std::invalid_argument("model file: expected 'dims' line");
  std::vector<std::size_t> dims;
  long long d = 0;
  while (dims_line >> d) {
    if (d <= 0) throw std::invalid_argument("model file: dims must be positive");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (!dims_line.eof()) throw std::invalid_argument("model file: malformed dims line");

  StudentModel model(dims);
  for (auto& layer : model.layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      const auto row = parse_row(next_content_line(in, "weight row"),
                                 static_cast<std::size_t>(layer.weight.cols()), "weight row");
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = row[c];
    }
    const auto bias = parse_row(next_content_line(in, "bias row"),
                                static_cast<std::size_t>(layer.bias.size()), "bias row");
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = bias[r];
  }
  return model;
}

}  // namespace pkt
