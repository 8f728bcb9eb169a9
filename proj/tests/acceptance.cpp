// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. Runs every release criterion and prints one
// [PASS]/[FAIL]/[SKIP] line each with the measured values; exits nonzero iff
// something failed. Criteria 1-7 finish in minutes on one core. Criteria 8
// and 9 retrain the full-size reference setups (days of CPU time) and only
// run when --paper-scale is given.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iarc/baselines.hpp"
#include "iarc/gradcheck.hpp"
#include "iarc/graph.hpp"
#include "iarc/model.hpp"
#include "iarc/rng.hpp"
#include "iarc/stream.hpp"
#include "iarc/train.hpp"

using namespace iarc;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Gate {
    int passed = 0, failed = 0, skipped = 0;

    void run(int idx, const char* name, const std::function<Outcome()>& fn) {
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %d %s: %s\n", out.ok ? "PASS" : "FAIL", idx, name, out.detail.c_str());
        std::fflush(stdout);
        ++(out.ok ? passed : failed);
    }

    void skip(int idx, const char* name, const char* why) {
        std::printf("[SKIP] %d %s: %s\n", idx, name, why);
        std::fflush(stdout);
        ++skipped;
    }
};

ModelSpec spec_of(Arch arch, AttnKind kind, int layers, int d, int n_con, int heads, int n) {
    ModelSpec s;
    s.arch = arch;
    s.attention = kind;
    s.layers = layers;
    s.d = d;
    s.n_con = n_con;
    s.heads = heads;
    s.n_symbols = n;
    return s;
}

void randomize_readout(Model& m, std::uint64_t seed) {
    Tensor* r = m.params().back();
    auto rng = make_rng(seed);
    *r = Tensor::uniform(r->shape(), -0.5, 0.5, rng);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// --- criterion 1: oracle fidelity -----------------------------------------

struct WorkedExample {
    std::string tasks;
    std::vector<int> symbols;
    std::vector<std::pair<int, ControlToken>> tape;
};

// Hand-transcribed reference sequences (N = 10): addition then a fresh
// increment; addition with two mirror points; increment with two context
// bumps. The taped position is the one directly under each control mark, so
// the token acts on the symbol that follows it.
const std::vector<WorkedExample> kWorkedExamples = {
    {"IA", {2, 3, 4, 7, 1, 8, 9, 7, 8, 9, 0, 1}, {{2, ControlToken::A}, {7, ControlToken::I}}},
    {"IAR",
     {2, 3, 4, 7, 1, 8, 8, 1, 7, 4, 3, 3, 4, 7},
     {{2, ControlToken::A}, {5, ControlToken::R}, {10, ControlToken::R}}},
    {"IARC",
     {1, 2, 3, 4, 6, 8, 0, 2, 4, 7, 0, 3},
     {{0, ControlToken::I}, {3, ControlToken::C}, {8, ControlToken::C}}},
};

TokenStream build_example(const WorkedExample& ex) {
    TokenStream s;
    s.symbols = ex.symbols;
    s.tape.assign(ex.symbols.size(), std::nullopt);
    for (auto [pos, tok] : ex.tape) s.tape[static_cast<std::size_t>(pos)] = tok;
    return s;
}

Outcome crit_oracle_fidelity() {
    for (const WorkedExample& ex : kWorkedExamples) {
        TaskConfig cfg = TaskConfig::standard(ex.tasks, 10 + static_cast<int>(ex.tasks.size()));
        TokenStream s = build_example(ex);
        if (!validate_stream(s, cfg)) return {false, "worked " + ex.tasks + " example rejected"};
        // A corrupted copy must be rejected, otherwise the replay is vacuous.
        TokenStream bad = s;
        std::size_t last = bad.symbols.size() - 2;
        bad.symbols[last] = (bad.symbols[last] + 1) % cfg.n_symbols;
        if (validate_stream(bad, cfg)) return {false, "corrupted " + ex.tasks + " example accepted"};
    }

    // Window layout: symbol one-hot in the first N slots, control one-hot in
    // the S slots behind them, all-zero control block where nothing is taped.
    {
        const WorkedExample& ex = kWorkedExamples.back();
        TaskConfig cfg = TaskConfig::standard(ex.tasks, 10 + static_cast<int>(ex.tasks.size()));
        TokenStream s = build_example(ex);
        int n_con = static_cast<int>(ex.symbols.size()) - 1;
        auto rng = make_rng(1);
        EncodedBatch b = slice_windows(s, cfg, n_con, 1, rng);
        const int d = cfg.embed_dim();
        for (int p = 0; p < n_con; ++p) {
            const double* row = b.inputs.data() + static_cast<std::int64_t>(p) * d;
            for (int c = 0; c < d; ++c) {
                double want = c == s.symbols[static_cast<std::size_t>(p)] ? 1.0 : 0.0;
                for (auto [pos, tok] : ex.tape)
                    if (pos == p && c == cfg.n_symbols + cfg.tape_slot(tok)) want = 1.0;
                if (row[c] != want)
                    return {false, fmt("encoded window mismatch at position %d slot %d", p, c)};
            }
            if (b.targets[static_cast<std::size_t>(p)] != s.symbols[static_cast<std::size_t>(p) + 1])
                return {false, fmt("window target mismatch at position %d", p)};
        }
    }

    // Generator fuzz: long streams over every subset replay exactly and
    // respect the opening-setter and spacing contracts.
    const std::vector<std::string> subsets = {"IARC", "IAR", "IA", "IR"};
    const std::int64_t len = 10000;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        TaskConfig cfg = TaskConfig::standard(subsets[seed % subsets.size()], 20, seed);
        TokenStream s = generate_stream(cfg, len);
        if (s.length() != len) return {false, fmt("length mismatch at seed %llu", (unsigned long long)seed)};
        if (!validate_stream(s, cfg))
            return {false, fmt("fuzz stream failed replay at seed %llu", (unsigned long long)seed)};
        for (int x : s.symbols)
            if (x < 0 || x >= cfg.n_symbols)
                return {false, fmt("symbol out of range at seed %llu", (unsigned long long)seed)};
        if (!s.tape[0] || *s.tape[0] == ControlToken::C)
            return {false, fmt("no opening task setter at seed %llu", (unsigned long long)seed)};
        std::int64_t prev = -1;
        for (std::int64_t t = 0; t < len; ++t) {
            if (!s.tape[static_cast<std::size_t>(t)]) continue;
            if (!cfg.has_task(*s.tape[static_cast<std::size_t>(t)]))
                return {false, fmt("taped token outside subset at seed %llu", (unsigned long long)seed)};
            if (prev >= 0 && (t - prev < cfg.spacing_min || t - prev > cfg.spacing_max))
                return {false, fmt("control gap %lld outside [%d, %d] at seed %llu", (long long)(t - prev),
                                   cfg.spacing_min, cfg.spacing_max, (unsigned long long)seed)};
            prev = t;
        }
    }
    return {true, "3 worked examples + window layout exact; 100 x 10000-step fuzz clean"};
}

// --- criterion 2: gradient correctness ------------------------------------

Outcome crit_gradients() {
    auto rng = make_rng(202);
    Tensor inputs = Tensor::uniform({2, 5, 8}, -1, 1, rng);
    const std::vector<int> targets{1, 0, 3, 2, 1, 0, 2, 3, 1, 2};

    std::vector<std::pair<std::string, std::unique_ptr<Model>>> variants;
    variants.emplace_back("transformer+dpa",
                          build_model(spec_of(Arch::transformer, AttnKind::dpa, 2, 8, 5, 2, 4), 21));
    variants.emplace_back("transformer+ea",
                          build_model(spec_of(Arch::transformer, AttnKind::ea, 2, 8, 5, 2, 4), 22));
    variants.emplace_back("cisformer+ea",
                          build_model(spec_of(Arch::cisformer, AttnKind::ea, 2, 8, 5, 2, 4), 23));
    variants.emplace_back("mlp", build_model(spec_of(Arch::mlp, AttnKind::dpa, 2, 8, 5, 2, 4), 24));
    variants.emplace_back(
        "lstm", std::make_unique<LstmModel>(spec_of(Arch::lstm, AttnKind::dpa, 2, 8, 5, 2, 4), 25, 12));

    double worst = 0.0;
    int coords = 0;
    double t0 = now_seconds();
    int salt = 0;
    for (auto& [name, m] : variants) {
        randomize_readout(*m, 300 + static_cast<std::uint64_t>(salt));
        auto params = m->params();
        auto build = [&](Graph& g) { return cross_entropy_logits(m->forward(g, inputs), targets); };
        GradCheckResult res = grad_check(build, params, 6, 400 + static_cast<std::uint64_t>(salt), 1e-5);
        if (!(res.max_rel_err < 1e-4))
            return {false, fmt("%s max rel err %.3e >= 1e-4", name.c_str(), res.max_rel_err)};
        worst = std::max(worst, res.max_rel_err);
        coords += res.checked;
        ++salt;
    }
    double dt = now_seconds() - t0;
    if (dt >= 120.0) return {false, fmt("took %.0fs, budget 120s", dt)};
    return {true, fmt("max rel err %.2e over 5 variants (%d coordinates), %.1fs", worst, coords, dt)};
}

// --- criterion 3: attention map invariants --------------------------------

Outcome crit_attention_maps() {
    auto rng = make_rng(303);
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    std::uniform_real_distribution<double> row_shift(-5.0, 5.0);
    const int T = 7;
    double worst_sum = 0.0, worst_shift = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
        // Mix moderate scores with saturated and vanishing ones; iteration 0
        // is all-zero, which must hit the uniform fallback of both maps.
        double scale = 1.0;
        if (iter % 9 == 0) scale = 60.0;
        if (iter % 13 == 0) scale = 1e-7;
        if (iter == 0) scale = 0.0;
        Tensor z({1, T, T});
        for (std::int64_t i = 0; i < z.size(); ++i) z.data()[i] = unif(rng) * scale;

        Tensor maps[2] = {dpa(z), ea(z)};
        for (const Tensor& w : maps) {
            for (int i = 0; i < T; ++i) {
                double sum = 0.0;
                for (int j = 0; j < T; ++j) {
                    double v = w.data()[i * T + j];
                    if (j > i && v != 0.0) return {false, fmt("nonzero above the diagonal at row %d", i)};
                    if (v < 0.0) return {false, fmt("negative weight %.3e at row %d", v, i)};
                    if (j <= i) sum += v;
                }
                worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
                if (std::abs(sum - 1.0) > 1e-6)
                    return {false, fmt("row sum off by %.3e at iteration %d", std::abs(sum - 1.0), iter)};
            }
        }

        // Evenness: weights depend on z only through z^2.
        Tensor zneg = z;
        for (std::int64_t i = 0; i < zneg.size(); ++i) zneg.data()[i] = -zneg.data()[i];
        if (ea(zneg).flat() != maps[1].flat())
            return {false, fmt("sign flip changed the even map at iteration %d", iter)};

        // Per-row constant shifts cancel in the softmax map.
        Tensor zs = z;
        for (int i = 0; i < T; ++i) {
            double c = row_shift(rng);
            for (int j = 0; j < T; ++j) zs.data()[i * T + j] += c;
        }
        Tensor shifted = dpa(zs);
        for (std::int64_t i = 0; i < shifted.size(); ++i) {
            double dev = std::abs(shifted.data()[i] - maps[0].data()[i]);
            worst_shift = std::max(worst_shift, dev);
            if (dev > 1e-12) return {false, fmt("shift invariance off by %.3e at iteration %d", dev, iter)};
        }
    }
    return {true, fmt("1000 matrices: worst row-sum dev %.1e, worst shift dev %.1e, causal zeros exact",
                      worst_sum, worst_shift)};
}

// --- criterion 4: parameter-count formulas --------------------------------

Outcome crit_param_counts() {
    int swept = 0;
    for (int d : {8, 12, 20})
        for (int layers : {1, 2, 60})
            for (int n_con : {5, 24}) {
                int n = d / 2;
                std::int64_t layer = 11LL * d * d + 4LL * d;
                ModelSpec tf = spec_of(Arch::transformer, AttnKind::dpa, layers, d, n_con, 4, n);
                if (param_count(tf) != layers * layer + static_cast<std::int64_t>(d) * n)
                    return {false, fmt("transformer count off at d=%d layers=%d", d, layers)};
                ModelSpec cis = spec_of(Arch::cisformer, AttnKind::ea, layers, d, n_con, 4, n);
                if (param_count(cis) !=
                    static_cast<std::int64_t>(layers) * n_con * layer +
                        static_cast<std::int64_t>(n_con) * d * n)
                    return {false, fmt("cisformer count off at d=%d layers=%d n_con=%d", d, layers, n_con)};
                ++swept;
            }

    std::int64_t tf_core =
        param_count(spec_of(Arch::transformer, AttnKind::dpa, 60, 20, 24, 4, 16)) - 20 * 16;
    std::int64_t cis_total = param_count(spec_of(Arch::cisformer, AttnKind::ea, 12, 20, 24, 4, 16));
    std::int64_t mlp_total = param_count(spec_of(Arch::mlp, AttnKind::dpa, 16, 20, 24, 4, 16));
    std::int64_t lstm_total = param_count(spec_of(Arch::lstm, AttnKind::dpa, 2, 20, 24, 4, 16));
    if (tf_core != 268800) return {false, fmt("60-layer core %lld != 268800", (long long)tf_core)};
    if (cis_total != 1297920) return {false, fmt("cisformer total %lld != 1297920", (long long)cis_total)};
    if (mlp_total != 1927680) return {false, fmt("mlp total %lld != 1927680", (long long)mlp_total)};
    if (lstm_total != 3687200 || lstm_total < 3600000 || lstm_total > 3800000)
        return {false, fmt("lstm total %lld outside [3.6M, 3.8M]", (long long)lstm_total)};
    return {true, fmt("%d-point sweep exact; full sizes 268800 / 1297920 / 1927680 / 3687200", swept)};
}

// --- criterion 5: untrained baseline --------------------------------------

Outcome crit_untrained_baseline() {
    TaskConfig task = TaskConfig::standard("IARC", 20);
    const double ln_n = std::log(16.0);
    const std::vector<std::pair<std::string, ModelSpec>> setups = {
        {"transformer+dpa", spec_of(Arch::transformer, AttnKind::dpa, 60, 20, 24, 4, 16)},
        {"transformer+ea", spec_of(Arch::transformer, AttnKind::ea, 60, 20, 24, 4, 16)},
        {"cisformer+ea", spec_of(Arch::cisformer, AttnKind::ea, 12, 20, 24, 4, 16)},
        {"mlp", spec_of(Arch::mlp, AttnKind::dpa, 16, 20, 24, 4, 16)},
        {"lstm", spec_of(Arch::lstm, AttnKind::dpa, 2, 20, 24, 4, 16)},
    };
    double acc_lo = 1.0, acc_hi = 0.0, worst_loss_dev = 0.0;
    int idx = 0;
    for (const auto& [name, spec] : setups) {
        auto m = build_model(spec, 50 + static_cast<std::uint64_t>(idx));
        EvalResult r = evaluate(*m, task, 1, 500 + static_cast<std::uint64_t>(idx));
        if (std::abs(r.accuracy - 0.0625) > 0.02)
            return {false, fmt("%s accuracy %.4f outside 0.0625 +- 0.02", name.c_str(), r.accuracy)};
        if (std::abs(r.loss - ln_n) > 0.05 * ln_n)
            return {false, fmt("%s loss %.4f more than 5%% from ln 16", name.c_str(), r.loss)};
        acc_lo = std::min(acc_lo, r.accuracy);
        acc_hi = std::max(acc_hi, r.accuracy);
        worst_loss_dev = std::max(worst_loss_dev, std::abs(r.loss - ln_n) / ln_n);
        ++idx;
    }
    return {true, fmt("5 full-size setups: accuracy in [%.4f, %.4f] (band 0.0625 +- 0.02), "
                      "loss within %.1e of ln 16",
                      acc_lo, acc_hi, worst_loss_dev)};
}

// --- criterion 6: causality -----------------------------------------------

Outcome crit_causality() {
    auto rng = make_rng(606);
    const int T = 6, d = 8, n = 6, cut = 3;
    std::vector<std::pair<std::string, std::unique_ptr<Model>>> variants;
    variants.emplace_back("transformer+dpa",
                          build_model(spec_of(Arch::transformer, AttnKind::dpa, 2, d, T, 2, n), 61));
    variants.emplace_back("transformer+ea",
                          build_model(spec_of(Arch::transformer, AttnKind::ea, 2, d, T, 2, n), 62));
    variants.emplace_back("cisformer+ea",
                          build_model(spec_of(Arch::cisformer, AttnKind::ea, 2, d, T, 2, n), 63));
    variants.emplace_back("mlp", build_model(spec_of(Arch::mlp, AttnKind::dpa, 2, d, T, 2, n), 64));
    variants.emplace_back(
        "lstm", std::make_unique<LstmModel>(spec_of(Arch::lstm, AttnKind::dpa, 2, d, T, 2, n), 65, 16));

    int salt = 0;
    for (auto& [name, m] : variants) {
        randomize_readout(*m, 700 + static_cast<std::uint64_t>(salt));
        Tensor inputs = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor shifted = inputs;
        for (int b = 0; b < 2; ++b)
            for (int t = cut; t < T; ++t)
                for (int c = 0; c < d; ++c)
                    shifted.data()[(static_cast<std::int64_t>(b) * T + t) * d + c] += 0.9;
        Graph g1, g2;
        Tensor l1 = m->forward(g1, inputs).val();
        Tensor l2 = m->forward(g2, shifted).val();
        bool tail_differs = false;
        for (int b = 0; b < 2; ++b)
            for (int t = 0; t < T; ++t)
                for (int c = 0; c < n; ++c) {
                    double x = l1.data()[(static_cast<std::int64_t>(b) * T + t) * n + c];
                    double y = l2.data()[(static_cast<std::int64_t>(b) * T + t) * n + c];
                    if (t < cut && x != y)
                        return {false, fmt("%s leaked a future perturbation into position %d",
                                           name.c_str(), t)};
                    if (t >= cut && x != y) tail_differs = true;
                }
        if (!tail_differs)
            return {false, name + " ignored the perturbation entirely (test has no teeth)"};
        ++salt;
    }
    return {true, "prefix logits bit-identical under future perturbation, 5 setups"};
}

// --- criterion 7: learning sanity -----------------------------------------

Outcome crit_learning_sanity() {
    TaskConfig task = TaskConfig::standard("IA", 20);
    ModelSpec spec = spec_of(Arch::cisformer, AttnKind::ea, 12, 20, 24, 4, task.n_symbols);
    TrainConfig cfg;  // training hyperparameters stay at their defaults
    cfg.epochs = 2000;
    cfg.eval_every = 25;  // evaluation cadence only; does not affect the updates
    cfg.eval_batches = 5;
    cfg.seed = 7;
    auto model = build_model(spec, 7);

    double base = -1.0;
    TrainHooks hooks;
    hooks.stop_after_eval = [&](int epoch, const EvalResult& r) {
        if (epoch == 0) {
            base = r.accuracy;
            return false;
        }
        // Stop a margin above the target so the recorded gain is not a coin
        // flip of evaluation noise.
        return r.accuracy >= base + 0.21;
    };
    double t0 = now_seconds();
    TrainReport rep = train(*model, task, cfg, hooks);
    double dt = now_seconds() - t0;
    double gain = rep.final_accuracy - base;
    if (gain < 0.2)
        return {false, fmt("accuracy %.3f -> %.3f, gain %.3f < 0.2 within %d epochs", base,
                           rep.final_accuracy, gain, cfg.epochs)};
    return {true, fmt("accuracy %.3f -> %.3f (gain %.3f) after %zu epochs, %.0fs", base,
                      rep.final_accuracy, gain, rep.points.size(), dt)};
}

// --- criterion 8: accuracy table at full scale (cli: table1) --------------

Outcome crit_accuracy_table() {
    struct Row {
        const char* tasks;
        double ref_dpa, ref_ea;
    };
    const std::vector<Row> rows = {
        {"IARC", 0.45, 0.58}, {"IAR", 0.48, 0.70}, {"IA", 0.80, 0.99}, {"IR", 0.84, 0.92}};
    std::ostringstream det;
    int idx = 0;
    for (const Row& row : rows) {
        double acc[2] = {0.0, 0.0};
        for (AttnKind kind : {AttnKind::dpa, AttnKind::ea}) {
            int run = 2 * idx + (kind == AttnKind::ea ? 1 : 0);
            TaskConfig task = TaskConfig::standard(row.tasks, 20);
            ModelSpec spec = spec_of(Arch::transformer, kind, 60, 20, 24, 4, task.n_symbols);
            TrainConfig cfg;  // full defaults: 8000 epochs, batch 200
            cfg.seed = derive_seed(9000, static_cast<std::uint64_t>(run));
            auto m = build_model(spec, derive_seed(9100, static_cast<std::uint64_t>(run)));
            TrainReport rep = train(*m, task, cfg);
            acc[kind == AttnKind::ea ? 1 : 0] = rep.final_accuracy;
        }
        double ref[2] = {row.ref_dpa, row.ref_ea};
        for (int j = 0; j < 2; ++j)
            if (std::abs(acc[j] - ref[j]) > 0.10)
                return {false, fmt("%s %s accuracy %.3f off reference %.2f by more than 0.10", row.tasks,
                                   j == 0 ? "dpa" : "ea", acc[j], ref[j])};
        if (!(acc[1] > acc[0]))
            return {false, fmt("%s: ea %.3f did not beat dpa %.3f", row.tasks, acc[1], acc[0])};
        det << row.tasks << " dpa " << fmt("%.3f", acc[0]) << " ea " << fmt("%.3f", acc[1]) << "; ";
        ++idx;
    }
    return {true, det.str() + "all cells within 0.10, ea > dpa on every subset"};
}

// --- criterion 9: learning-curve bands at full scale (cli: fig1) ----------

Outcome crit_curve_bands() {
    TaskConfig task = TaskConfig::standard("IARC", 20);
    struct Setup {
        const char* name;
        ModelSpec spec;
        bool star;  // the setup expected to solve the benchmark
    };
    const std::vector<Setup> setups = {
        {"lstm", spec_of(Arch::lstm, AttnKind::dpa, 2, 20, 24, 4, 16), false},
        {"mlp", spec_of(Arch::mlp, AttnKind::dpa, 16, 20, 24, 4, 16), false},
        {"cisformer+dpa", spec_of(Arch::cisformer, AttnKind::dpa, 12, 20, 24, 4, 16), false},
        {"cisformer+ea", spec_of(Arch::cisformer, AttnKind::ea, 12, 20, 24, 4, 16), true},
    };
    std::ostringstream det;
    int idx = 0;
    for (const Setup& su : setups) {
        TrainConfig cfg;  // full defaults: 8000 epochs, batch 200
        cfg.seed = derive_seed(9500, static_cast<std::uint64_t>(idx));
        auto m = build_model(su.spec, derive_seed(9600, static_cast<std::uint64_t>(idx)));
        TrainReport rep = train(*m, task, cfg);
        double acc = rep.final_accuracy;
        if (su.star && acc < 0.85)
            return {false, fmt("%s final accuracy %.3f < 0.85", su.name, acc)};
        if (!su.star && !(acc > 0.30 && acc < 0.70))
            return {false, fmt("%s final accuracy %.3f outside the (0.30, 0.70) plateau band", su.name, acc)};
        det << su.name << " " << fmt("%.3f", acc) << "; ";
        ++idx;
    }
    return {true, det.str() + "separation preserved"};
}

}  // namespace

int main(int argc, char** argv) {
    bool paper_scale = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--paper-scale") == 0) {
            paper_scale = true;
        } else if (std::strcmp(argv[i], "--help") == 0 || std::strcmp(argv[i], "-h") == 0) {
            std::printf("usage: acceptance [--paper-scale]\n"
                        "Runs the release criteria; --paper-scale adds the full-size\n"
                        "reproduction runs (days of CPU time on one core).\n");
            return 0;
        } else {
            std::fprintf(stderr, "unknown argument: %s\n", argv[i]);
            return 1;
        }
    }

    Gate gate;
    gate.run(1, "oracle fidelity", crit_oracle_fidelity);
    gate.run(2, "gradient correctness", crit_gradients);
    gate.run(3, "attention map invariants", crit_attention_maps);
    gate.run(4, "parameter-count formulas", crit_param_counts);
    gate.run(5, "untrained baseline", crit_untrained_baseline);
    gate.run(6, "causality", crit_causality);
    gate.run(7, "learning sanity", crit_learning_sanity);
    if (paper_scale) {
        gate.run(8, "accuracy table (table1 scale)", crit_accuracy_table);
        gate.run(9, "learning-curve bands (fig1 scale)", crit_curve_bands);
    } else {
        gate.skip(8, "accuracy table (table1 scale)", "full-size runs; rerun with --paper-scale");
        gate.skip(9, "learning-curve bands (fig1 scale)", "full-size runs; rerun with --paper-scale");
    }
    std::printf("acceptance: %d passed, %d failed, %d skipped\n", gate.passed, gate.failed,
                gate.skipped);
    return gate.failed == 0 ? 0 : 1;
}
