#include "pkt/trainer.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "pkt/affinity.hpp"
#include "pkt/divergence.hpp"
#include "pkt/io.hpp"
#include "pkt/log.hpp"

namespace pkt {

TrainResult train(StudentModel model, const FeatureMatrix& raw_inputs,
                  const FeatureMatrix& teacher_feats,
                  std::optional<std::span<const int>> labels, const TrainConfig& cfg) {
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (cfg.batch_size < 2) throw std::invalid_argument("train: batch size must be >= 2");
  if (!(cfg.sup_weight >= 0.0)) throw std::invalid_argument("train: sup_weight must be >= 0");
  validate_features(raw_inputs, 2, "train inputs");
  validate_features(teacher_feats, 2, "train teacher features");
  if (raw_inputs.rows() != teacher_feats.rows()) {
    throw std::invalid_argument("train: inputs have " + std::to_string(raw_inputs.rows()) +
                                " rows but teacher features have " +
                                std::to_string(teacher_feats.rows()));
  }
  if (raw_inputs.cols() != static_cast<Eigen::Index>(model.input_dim())) {
    throw std::invalid_argument("train: input dimension does not match the model");
  }
  const bool supervised = cfg.sup_weight > 0.0;
  if (supervised) {
    if (!labels) throw std::invalid_argument("train: sup_weight > 0 requires labels");
    if (static_cast<Eigen::Index>(labels->size()) != raw_inputs.rows()) {
      throw std::invalid_argument("train: label count does not match inputs");
    }
  }

  const auto n_total = static_cast<std::size_t>(raw_inputs.rows());
  const std::size_t batch_size = std::min(cfg.batch_size, n_total);
  AdamState adam(model.parameter_count(), cfg.lr);

  TrainResult result{std::move(model), {}};
  std::size_t global_batch = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto chunks = sample_batches(n_total, batch_size, cfg.seed, epoch);
    if (n_total % batch_size == 1) {
      log::debug("epoch " + std::to_string(epoch) + ": dropped a single-sample tail batch");
    }

    for (std::size_t b = 0; b < chunks.size(); ++b) {
      const auto& idx = chunks[b];
      const FeatureMatrix x = gather_rows(raw_inputs, idx);
      const ProbabilityMatrix p =
          conditional_probabilities(gather_rows(teacher_feats, idx), cfg.teacher_spec);
      const FeatureMatrix y = forward(result.model, x);

      LossReport loss;
      if (supervised) {
        std::vector<int> batch_labels(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) batch_labels[i] = (*labels)[idx[i]];
        bool any_pair = false;
        for (std::size_t i = 0; i < idx.size() && !any_pair; ++i) {
          for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (batch_labels[i] == batch_labels[j]) {
              any_pair = true;
              break;
            }
          }
        }
        if (any_pair) {
          const SupervisedTargets sup = supervised_targets(batch_labels);
          loss = pkt_loss_and_grad(y, p, cfg.student_spec, sup.targets, cfg.sup_weight);
        } else {
          loss = pkt_loss_and_grad(y, p, cfg.student_spec);
        }
      } else {
        loss = pkt_loss_and_grad(y, p, cfg.student_spec);
      }

      const ModelGradients grads = backward(result.model, x, loss.grad_y);
      adam_step(adam, result.model, grads);
      result.trace.push_back({epoch, b, loss.value});

      ++global_batch;
      if (cfg.log_every > 0 && global_batch % cfg.log_every == 0) {
        log::info("epoch " + std::to_string(epoch) + " batch " + std::to_string(b) +
                  " loss " + format_double(loss.value));
      }
    }
  }
  return result;
}

std::vector<double> epoch_mean_losses(const std::vector<LossRecord>& trace) {
  std::vector<double> sums;
  std::vector<std::size_t> counts;
  for (const auto& r : trace) {
    if (r.epoch >= sums.size()) {
      sums.resize(r.epoch + 1, 0.0);
      counts.resize(r.epoch + 1, 0);
    }
    sums[r.epoch] += r.loss;
    ++counts[r.epoch];
  }
  for (std::size_t e = 0; e < sums.size(); ++e) {
    if (counts[e]) sums[e] /= static_cast<double>(counts[e]);
  }
  return sums;
}

void write_loss_trace(std::ostream& out, const std::vector<LossRecord>& trace) {
  for (const auto& r : trace) {
    out << r.epoch << ' ' << r.batch << ' ' << format_double(r.loss) << '\n';
  }
}

}  // namespace pkt
