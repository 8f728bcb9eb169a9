// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/train.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "iarc/graph.hpp"
#include "iarc/optimizer.hpp"
#include "iarc/rng.hpp"

namespace iarc {
namespace {

// Every consumer of randomness hangs off cfg.seed through its own salt, so
// adding a consumer never shifts the draws of another.
constexpr std::uint64_t kSaltTrainStream = 1;
constexpr std::uint64_t kSaltTrainWindows = 2;
constexpr std::uint64_t kSaltEval = 3;

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

Tensor slice_rows(const Tensor& inputs, int r0, int r1) {
    const int t = inputs.dim(1), d = inputs.dim(2);
    Tensor out({r1 - r0, t, d});
    std::memcpy(out.data(), inputs.data() + static_cast<std::int64_t>(r0) * t * d,
                static_cast<std::size_t>((r1 - r0)) * t * d * sizeof(double));
    return out;
}

std::int64_t count_argmax_matches(const Tensor& logits, const std::vector<int>& targets) {
    const int c = logits.dim(logits.rank() - 1);
    const std::int64_t rows = logits.size() / c;
    if (rows != static_cast<std::int64_t>(targets.size()))
        throw std::invalid_argument("accuracy: " + std::to_string(targets.size()) +
                                    " targets for " + std::to_string(rows) + " logit rows");
    const double* lp = logits.data();
    std::int64_t correct = 0;
    for (std::int64_t r = 0; r < rows; ++r, lp += c) {
        int best = 0;
        for (int j = 1; j < c; ++j)
            if (lp[j] > lp[best]) best = j;
        if (best == targets[static_cast<std::size_t>(r)]) ++correct;
    }
    return correct;
}

struct BatchMetrics {
    double loss = 0.0;
    double accuracy = 0.0;
};

// Forward (and optionally backward) over one encoded batch, micro_batch rows
// at a time. Metrics are exact batch means. When grads is set, each chunk
// loss is scaled by its row share before backward, so the accumulated
// gradients equal the full-batch mean gradient.
BatchMetrics run_batch(Model& model, const EncodedBatch& batch, int micro_batch,
                       std::vector<Tensor>* grads) {
    const int rows = batch.batch();
    const int t = batch.n_con();
    const int n = model.spec().n_symbols;
    for (int tgt : batch.targets)
        if (tgt < 0 || tgt >= n) throw std::logic_error("target outside the symbol vocabulary");
    const int chunk = micro_batch > 0 ? std::min(micro_batch, rows) : rows;

    double loss_sum = 0.0;
    std::int64_t correct = 0;
    for (int r0 = 0; r0 < rows; r0 += chunk) {
        const int r1 = std::min(rows, r0 + chunk);
        Graph g;
        Value logits = model.forward(g, slice_rows(batch.inputs, r0, r1));
        std::vector<int> targets(batch.targets.begin() + static_cast<std::ptrdiff_t>(r0) * t,
                                 batch.targets.begin() + static_cast<std::ptrdiff_t>(r1) * t);
        Value ce = cross_entropy_logits(logits, targets);
        loss_sum += ce.val().item() * (r1 - r0);
        correct += count_argmax_matches(logits.val(), targets);
        if (grads) {
            g.backward(scale(ce, static_cast<double>(r1 - r0) / rows));
            if (g.n_params() != static_cast<int>(grads->size()))
                throw std::logic_error("model registered an unexpected parameter count");
            for (int i = 0; i < g.n_params(); ++i) {
                const Tensor& gi = g.param_grad(i);
                double* acc = (*grads)[static_cast<std::size_t>(i)].data();
                for (std::int64_t k = 0; k < gi.size(); ++k) acc[k] += gi.data()[k];
            }
        }
    }
    return {loss_sum / rows, static_cast<double>(correct) / (static_cast<double>(rows) * t)};
}

void check_compatible(const Model& model, const TaskConfig& task) {
    const ModelSpec& spec = model.spec();
    if (task.embed_dim() != spec.d)
        throw std::invalid_argument("task embed dim " + std::to_string(task.embed_dim()) +
                                    " does not match model d " + std::to_string(spec.d));
    if (task.n_symbols != spec.n_symbols)
        throw std::invalid_argument("task has " + std::to_string(task.n_symbols) +
                                    " symbols, model expects " + std::to_string(spec.n_symbols));
}

EncodedBatch fresh_batch(const TaskConfig& task, int n_con, int batch_size,
                         std::uint64_t stream_seed, std::uint64_t window_seed) {
    TaskConfig t = task;
    t.seed = stream_seed;
    TokenStream stream =
        generate_stream(t, static_cast<std::int64_t>(batch_size) * (n_con + 1));
    auto rng = make_rng(window_seed);
    return slice_windows(stream, t, n_con, batch_size, rng);
}

}  // namespace

void TrainConfig::validate() const {
    if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
    if (batch_size <= 0) throw std::invalid_argument("batch size must be positive");
    if (!(lr >= 0.0)) throw std::invalid_argument("learning rate must be non-negative");
    if (momentum < 0.0 || momentum >= 1.0) throw std::invalid_argument("momentum must be in [0, 1)");
    if (n_con <= 0) throw std::invalid_argument("context window must be positive");
    if (eval_every <= 0) throw std::invalid_argument("eval cadence must be positive");
    if (eval_batches <= 0) throw std::invalid_argument("eval batch count must be positive");
    if (micro_batch <= 0) throw std::invalid_argument("micro batch must be positive");
}

double batch_accuracy(const Tensor& logits, const std::vector<int>& targets) {
    if (logits.rank() < 2) throw std::invalid_argument("accuracy needs rank >= 2 logits");
    const std::int64_t rows = logits.size() / logits.dim(logits.rank() - 1);
    return static_cast<double>(count_argmax_matches(logits, targets)) / static_cast<double>(rows);
}

EvalResult evaluate(Model& model, const TaskConfig& task, int n_batches, std::uint64_t seed,
                    int batch_size, int micro_batch) {
    if (n_batches <= 0 || batch_size <= 0) throw std::invalid_argument("eval sizes must be positive");
    task.validate();
    check_compatible(model, task);
    const int n_con = model.spec().n_con;
    double loss = 0.0, acc = 0.0;
    for (int b = 0; b < n_batches; ++b) {
        EncodedBatch batch = fresh_batch(task, n_con, batch_size, derive_seed(seed, 2 * b),
                                         derive_seed(seed, 2 * b + 1));
        BatchMetrics m = run_batch(model, batch, micro_batch, nullptr);
        loss += m.loss;
        acc += m.accuracy;
    }
    return {loss / n_batches, acc / n_batches};
}

TrainReport train(Model& model, const TaskConfig& task, const TrainConfig& cfg,
                  const TrainHooks& hooks) {
    cfg.validate();
    task.validate();
    check_compatible(model, task);
    if (cfg.n_con != model.spec().n_con)
        throw std::invalid_argument("train n_con " + std::to_string(cfg.n_con) +
                                    " does not match model n_con " +
                                    std::to_string(model.spec().n_con));

    const auto t0 = std::chrono::steady_clock::now();
    TrainReport rep;
    rep.model_spec = model.spec().serialize();
    rep.tasks = task.tasks_str();
    rep.config = cfg;

    std::vector<Tensor*> params = model.params();
    SgdMomentum opt(params, cfg.lr, cfg.momentum);
    const std::uint64_t stream_base = derive_seed(cfg.seed, kSaltTrainStream);
    const std::uint64_t window_base = derive_seed(cfg.seed, kSaltTrainWindows);
    const std::uint64_t eval_base = derive_seed(cfg.seed, kSaltEval);

    auto run_eval = [&](int epoch) {
        EvalResult r = evaluate(model, task, cfg.eval_batches, derive_seed(eval_base, epoch),
                                cfg.batch_size, cfg.micro_batch);
        rep.evals.push_back({epoch, r.loss, r.accuracy});
        if (hooks.on_eval) hooks.on_eval(epoch, r);
        return hooks.stop_after_eval && hooks.stop_after_eval(epoch, r);
    };
    auto record_point = [&](int epoch, const BatchMetrics& m) {
        if (!std::isfinite(m.loss))
            throw NumericalError("non-finite loss " + fmt17(m.loss) + " at epoch " +
                                 std::to_string(epoch));
        rep.points.push_back({epoch, m.loss, m.accuracy});
        if (hooks.on_epoch) hooks.on_epoch(rep.points.back());
    };

    bool stopped = run_eval(0);
    if (cfg.epochs == 0 || stopped) {
        // Forward-only pass over what would have been the first batch.
        EncodedBatch batch = fresh_batch(task, cfg.n_con, cfg.batch_size,
                                         derive_seed(stream_base, 0), derive_seed(window_base, 0));
        record_point(0, run_batch(model, batch, cfg.micro_batch, nullptr));
    } else {
        std::vector<Tensor> grads;
        grads.reserve(params.size());
        for (Tensor* p : params) grads.emplace_back(p->shape());
        for (int e = 0; e < cfg.epochs && !stopped; ++e) {
            for (Tensor& g : grads) g.fill(0.0);
            EncodedBatch batch = fresh_batch(task, cfg.n_con, cfg.batch_size,
                                             derive_seed(stream_base, static_cast<std::uint64_t>(e)),
                                             derive_seed(window_base, static_cast<std::uint64_t>(e)));
            record_point(e, run_batch(model, batch, cfg.micro_batch, &grads));
            opt.step(grads);
            const int done = e + 1;
            if (done % cfg.eval_every == 0 && done != cfg.epochs) stopped = run_eval(done);
        }
        if (!stopped) run_eval(cfg.epochs);
    }

    rep.final_loss = rep.evals.back().loss;
    rep.final_accuracy = rep.evals.back().accuracy;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<AblationResult> ablation_suite(const ModelSpec& base, const TrainConfig& cfg,
                                           const std::vector<std::string>& subsets,
                                           std::uint64_t model_seed) {
    std::vector<AblationResult> out;
    out.reserve(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        TaskConfig task = TaskConfig::standard(subsets[i], base.d);
        ModelSpec spec = base;
        spec.n_symbols = task.n_symbols;
        spec.n_con = cfg.n_con;
        spec.validate();
        auto model = build_model(spec, derive_seed(model_seed, i));
        TrainReport rep = train(*model, task, cfg);
        out.push_back({subsets[i], {rep.final_loss, rep.final_accuracy}});
    }
    return out;
}

void write_report_csv(const TrainReport& rep, std::ostream& os) {
    std::string spec_line = rep.model_spec;
    for (char& c : spec_line)
        if (c == '\n') c = ' ';
    while (!spec_line.empty() && spec_line.back() == ' ') spec_line.pop_back();
    os << "# " << spec_line << " tasks=" << rep.tasks << " epochs=" << rep.config.epochs
       << " batch_size=" << rep.config.batch_size << " lr=" << fmt17(rep.config.lr)
       << " momentum=" << fmt17(rep.config.momentum) << " eval_every=" << rep.config.eval_every
       << " eval_batches=" << rep.config.eval_batches << " micro_batch=" << rep.config.micro_batch
       << " seed=" << rep.config.seed << "\n";
    os << "epoch,loss,accuracy\n";
    for (const EpochPoint& p : rep.points)
        os << p.epoch << ',' << fmt17(p.loss) << ',' << fmt17(p.accuracy) << "\n";
    os << "# results\n";
    for (const EpochPoint& e : rep.evals) {
        os << "eval_" << e.epoch << "_loss=" << fmt17(e.loss) << "\n";
        os << "eval_" << e.epoch << "_accuracy=" << fmt17(e.accuracy) << "\n";
    }
    os << "final_loss=" << fmt17(rep.final_loss) << "\n";
    os << "final_accuracy=" << fmt17(rep.final_accuracy) << "\n";
    for (const auto& [key, value] : rep.extras) os << key << '=' << value << "\n";
    if (!os) throw std::runtime_error("report write failed");
}

void write_report_csv(const TrainReport& rep, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open report for writing: " + path);
    write_report_csv(rep, os);
}

}  // namespace iarc
