#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pkt/kernel.hpp"
#include "pkt/student.hpp"
#include "pkt/types.hpp"

namespace pkt {

struct TrainConfig {
  std::size_t epochs = 1;
  std::size_t batch_size = 128;
  /// The loss is a sum over pairs, so the effective step grows with batch size.
  double lr = 1e-4;
  KernelSpec teacher_spec = KernelSpec::cosine();
  KernelSpec student_spec = KernelSpec::cosine();
  /// Weight of the supervised divergence; 0 disables it (S-PKT uses 0.001).
  double sup_weight = 0.0;
  std::uint64_t seed = 0;
  /// Emit an info log line every this many batches; 0 disables.
  std::size_t log_every = 0;
};

struct LossRecord {
  std::size_t epoch = 0;
  std::size_t batch = 0;
  double loss = 0.0;
};

struct TrainResult {
  StudentModel model;
  std::vector<LossRecord> trace;
};

/// Transfers the teacher's conditional-probability structure into the
/// student. Labels are read only when cfg.sup_weight > 0. A batch size larger
/// than the transfer set is reduced to the set size.
TrainResult train(StudentModel model, const FeatureMatrix& raw_inputs,
                  const FeatureMatrix& teacher_feats,
                  std::optional<std::span<const int>> labels,
                  const TrainConfig& cfg);

/// Mean traced loss of each epoch, in epoch order.
std::vector<double> epoch_mean_losses(const std::vector<LossRecord>& trace);

/// One "epoch batch loss" line per record.
void write_loss_trace(std::ostream& out, const std::vector<LossRecord>& trace);

}  // namespace pkt
