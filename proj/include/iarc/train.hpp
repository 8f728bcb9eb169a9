// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iarc/model.hpp"
#include "iarc/stream.hpp"

namespace iarc {

// Training protocol knobs. The defaults are the reference protocol: constant
// learning rate, classical momentum, one optimizer step per fresh batch.
struct TrainConfig {
    int epochs = 8000;
    int batch_size = 200;
    double lr = 0.02;
    double momentum = 0.8;
    int n_con = 24;
    int eval_every = 500;
    int eval_batches = 25;
    // Rows per forward/backward chunk; gradients are accumulated so the step
    // equals a full-batch step regardless of this value (memory knob only).
    int micro_batch = 50;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

struct EpochPoint {
    int epoch = 0;
    double loss = 0.0;
    double accuracy = 0.0;
};

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;
};

// Thrown when a loss turns non-finite; carries the epoch in the message.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Optional callbacks, invoked during train(). on_epoch fires after every
// optimizer step with the pre-step batch metrics; on_eval fires for every
// held-out evaluation, including the final one. A true return from
// stop_after_eval ends training at that evaluation, which then stands as the
// final one (early-exit for reached-target runs).
struct TrainHooks {
    std::function<void(const EpochPoint&)> on_epoch;
    std::function<void(int epoch, const EvalResult&)> on_eval;
    std::function<bool(int epoch, const EvalResult&)> stop_after_eval;
};

struct TrainReport {
    // One entry per epoch: loss/accuracy of the fresh training batch under
    // the parameters *before* that epoch's step. epochs = 0 still yields the
    // epoch-0 entry (forward only).
    std::vector<EpochPoint> points;
    // Held-out evaluations: epoch 0, every eval_every steps, and after the
    // last step.
    std::vector<EpochPoint> evals;
    double final_loss = 0.0;
    double final_accuracy = 0.0;
    double wall_seconds = 0.0;  // not serialized; CSV output is rerun-stable

    std::string model_spec;  // serialized ModelSpec echo
    std::string tasks;       // task subset letters, e.g. "IARC"
    TrainConfig config;
    // Extra key=value pairs appended verbatim to the CSV result block.
    std::vector<std::pair<std::string, std::string>> extras;
};

// Fraction of rows whose argmax logit matches the target. logits: (..., C),
// targets flattened row-major; ties resolve to the lowest class index.
double batch_accuracy(const Tensor& logits, const std::vector<int>& targets);

// Mean loss/accuracy over n_batches fresh batches, deterministic given seed.
// Window length comes from model.spec().n_con.
EvalResult evaluate(Model& model, const TaskConfig& task, int n_batches, std::uint64_t seed,
                    int batch_size = 200, int micro_batch = 50);

// One epoch = one fresh batch of cfg.batch_size windows, mean cross entropy
// over every (window x position) next-symbol target, one momentum-SGD step.
// task.seed is ignored; all data seeds derive from cfg.seed.
TrainReport train(Model& model, const TaskConfig& task, const TrainConfig& cfg,
                  const TrainHooks& hooks = {});

struct AblationResult {
    std::string tasks;
    EvalResult final_eval;
};

// Trains a fresh model per task subset, adjusting n_symbols so the embed dim
// stays equal to base.d, and reports the final held-out accuracies.
std::vector<AblationResult> ablation_suite(const ModelSpec& base, const TrainConfig& cfg,
                                           const std::vector<std::string>& subsets,
                                           std::uint64_t model_seed);

// CSV layout: one '#' config comment line, an epoch,loss,accuracy header and
// per-epoch rows, then a '# results' marker and key=value lines (evals,
// finals, extras). Doubles carry 17 significant digits so equal runs produce
// byte-identical files.
void write_report_csv(const TrainReport& report, std::ostream& os);
void write_report_csv(const TrainReport& report, const std::string& path);

}  // namespace iarc
