// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iarc/checkpoint.hpp"
#include "iarc/manifest.hpp"
#include "iarc/model.hpp"
#include "iarc/rng.hpp"
#include "iarc/stream.hpp"
#include "iarc/train.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace iarc;

namespace {

// Independent sub-seeds per consumer so one CLI seed drives everything.
constexpr std::uint64_t kModelSeedSalt = 0xA11CE;

int default_layers(Arch arch) {
    switch (arch) {
        case Arch::transformer: return 60;
        case Arch::cisformer: return 12;
        case Arch::mlp: return 16;
        case Arch::lstm: return 2;
    }
    return 12;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

// ---- gen ----

struct GenArgs {
    std::string tasks = "IARC";
    int n = -1;  // n_symbols; default keeps embed dim 20
    std::int64_t len = 1000;
    std::uint64_t seed = 0;
    std::string out;
    bool validate = false;
};

int run_gen(const GenArgs& a) {
    const int n = a.n > 0 ? a.n : 20 - static_cast<int>(a.tasks.size());
    TaskConfig cfg = TaskConfig::standard(a.tasks, n + static_cast<int>(a.tasks.size()), a.seed);
    TokenStream stream = generate_stream(cfg, a.len);
    if (a.validate && !validate_stream(stream, cfg)) {
        std::cerr << "numerical failure: generated stream does not replay under the oracle\n";
        return 2;
    }
    if (a.out.empty()) {
        dump_stream(stream, std::cout);
    } else {
        fs::create_directories(a.out);
        std::ofstream os = open_out(fs::path(a.out) / "stream.txt");
        dump_stream(stream, os);
    }
    if (a.validate) std::cerr << "validated: ok\n";
    return 0;
}

// ---- train ----

struct TrainArgs {
    std::string tasks = "IARC";
    std::string arch = "cisformer";
    std::string attn = "ea";
    int layers = -1;  // per-arch default
    int epochs = 8000;
    int batch = 200;
    double lr = 0.02;
    double momentum = 0.8;
    int ncon = 24;
    std::uint64_t seed = 0;
    std::string out = ".";
};

int run_train(const TrainArgs& a) {
    ExperimentManifest m;
    m.tasks = a.tasks;
    m.out_dir = a.out;
    m.model.arch = arch_from_name(a.arch);
    m.model.attention = attn_kind_from_name(a.attn);
    m.model.layers = a.layers > 0 ? a.layers : default_layers(m.model.arch);
    m.model.n_con = a.ncon;
    m.model.n_symbols = TaskConfig::standard(a.tasks, m.model.d).n_symbols;
    m.id = a.arch + (m.model.uses_attention() ? "-" + a.attn : "") + "-" + a.tasks;
    m.train.epochs = a.epochs;
    m.train.batch_size = a.batch;
    m.train.lr = a.lr;
    m.train.momentum = a.momentum;
    m.train.n_con = a.ncon;
    m.train.seed = a.seed;
    m.validate();

    fs::create_directories(a.out);
    open_out(fs::path(a.out) / "manifest.txt") << m.serialize();

    auto model = build_model(m.model, derive_seed(m.train.seed, kModelSeedSalt));
    TrainHooks hooks;
    hooks.on_eval = [&](int epoch, const EvalResult& r) {
        std::cerr << m.id << " eval at epoch " << epoch << ": loss " << r.loss << ", accuracy "
                  << r.accuracy << "\n";
        if (epoch > 0 && epoch < m.train.epochs)
            save_checkpoint(model->params(),
                            (fs::path(a.out) / ("ckpt_" + std::to_string(epoch) + ".ckpt")).string());
    };
    TrainReport rep = train(*model, m.task_config(), m.train, hooks);

    write_report_csv(rep, (fs::path(a.out) / "report.csv").string());
    save_checkpoint(model->params(), (fs::path(a.out) / "final.ckpt").string());
    std::cout << "final_loss=" << fmt17(rep.final_loss) << "\n"
              << "final_accuracy=" << fmt17(rep.final_accuracy) << "\n";
    return 0;
}

// ---- table1 / fig1 ----

struct ScaleArgs {
    int layers = -1;  // -1: paper scale (or quick preset)
    int epochs = -1;
    int batch = 200;
    double lr = 0.02;
    double momentum = 0.8;
    int ncon = 24;
    std::uint64_t seed = 0;
    std::string out = ".";
    bool quick = false;
};

TrainConfig scale_config(const ScaleArgs& a, int epochs, std::uint64_t data_seed) {
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = a.batch;
    cfg.lr = a.lr;
    cfg.momentum = a.momentum;
    cfg.n_con = a.ncon;
    cfg.eval_every = a.quick ? 100 : 500;
    cfg.eval_batches = a.quick ? 5 : 25;
    cfg.seed = data_seed;
    return cfg;
}

TrainReport train_once(const ModelSpec& spec, const std::string& tasks, const TrainConfig& cfg,
                       std::uint64_t model_seed, const std::string& tag) {
    TaskConfig task = TaskConfig::standard(tasks, spec.d);
    auto model = build_model(spec, model_seed);
    TrainHooks hooks;
    hooks.on_eval = [&](int epoch, const EvalResult& r) {
        std::cerr << tag << " eval at epoch " << epoch << ": loss " << r.loss << ", accuracy "
                  << r.accuracy << "\n";
    };
    return train(*model, task, cfg, hooks);
}

const char* kSubsets[4] = {"IARC", "IAR", "IA", "IR"};

int run_table1(const ScaleArgs& a) {
    const int layers = a.layers > 0 ? a.layers : (a.quick ? 4 : 60);
    const int epochs = a.epochs >= 0 ? a.epochs : (a.quick ? 200 : 8000);
    const AttnKind kinds[2] = {AttnKind::dpa, AttnKind::ea};
    const double paper[2][4] = {{0.45, 0.48, 0.80, 0.84}, {0.58, 0.70, 0.99, 0.92}};

    double got[2][4] = {};
    int idx = 0;
    for (int ai = 0; ai < 2; ++ai) {
        for (int si = 0; si < 4; ++si, ++idx) {
            ModelSpec spec;
            spec.arch = Arch::transformer;
            spec.attention = kinds[ai];
            spec.layers = layers;
            spec.n_con = a.ncon;
            spec.n_symbols = TaskConfig::standard(kSubsets[si], spec.d).n_symbols;
            TrainConfig cfg = scale_config(a, epochs, derive_seed(a.seed, 2 * idx + 1));
            std::string tag = std::string(attn_kind_name(kinds[ai])) + "/" + kSubsets[si];
            got[ai][si] =
                train_once(spec, kSubsets[si], cfg, derive_seed(a.seed, 2 * idx), tag)
                    .final_accuracy;
        }
    }

    if (a.quick)
        std::cout << "NOTE: non-paper-scale results (--quick preset: layers=" << layers
                  << ", epochs=" << epochs << ")\n";
    std::cout << "standard transformer, " << layers << " layers, " << epochs << " epochs\n";
    std::cout << std::left << std::setw(11) << "" << std::right;
    for (const char* s : kSubsets) std::cout << std::setw(8) << s;
    std::cout << "\n" << std::fixed << std::setprecision(3);
    const char* attn_label[2] = {"DPA", "EA"};
    for (int ai = 0; ai < 2; ++ai) {
        std::cout << std::left << std::setw(11) << (std::string(attn_label[ai]) + " run")
                  << std::right;
        for (int si = 0; si < 4; ++si) std::cout << std::setw(8) << got[ai][si];
        std::cout << "\n" << std::left << std::setw(11) << (std::string(attn_label[ai]) + " paper")
                  << std::right;
        for (int si = 0; si < 4; ++si) std::cout << std::setw(8) << paper[ai][si];
        std::cout << "\n" << std::left << std::setw(11) << (std::string(attn_label[ai]) + " delta")
                  << std::right << std::showpos;
        for (int si = 0; si < 4; ++si) std::cout << std::setw(8) << got[ai][si] - paper[ai][si];
        std::cout << std::noshowpos << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);

    fs::create_directories(a.out);
    std::ofstream os = open_out(fs::path(a.out) / "table1.csv");
    if (a.quick) os << "# non-paper-scale\n";
    os << "attn,tasks,accuracy,paper,delta\n";
    for (int ai = 0; ai < 2; ++ai)
        for (int si = 0; si < 4; ++si)
            os << attn_kind_name(kinds[ai]) << ',' << kSubsets[si] << ',' << fmt17(got[ai][si])
               << ',' << paper[ai][si] << ',' << fmt17(got[ai][si] - paper[ai][si]) << "\n";
    return 0;
}

int run_fig1(const ScaleArgs& a) {
    const int epochs = a.epochs >= 0 ? a.epochs : (a.quick ? 200 : 8000);
    struct Def {
        const char* column;
        Arch arch;
        AttnKind attn;
        int layers;
    };
    Def defs[4] = {
        {"lstm", Arch::lstm, AttnKind::dpa, a.quick ? 1 : 2},
        {"mlp", Arch::mlp, AttnKind::dpa, a.quick ? 2 : 16},
        {"cis_dpa", Arch::cisformer, AttnKind::dpa, a.quick ? 2 : 12},
        {"cis_ea", Arch::cisformer, AttnKind::ea, a.quick ? 2 : 12},
    };
    if (a.layers > 0)
        for (Def& d : defs) d.layers = a.layers;

    std::vector<EpochPoint> curves[4];  // IARC held-out curve per model
    double finals[4][4] = {};           // [model][subset]
    int idx = 0;
    for (int mi = 0; mi < 4; ++mi) {
        for (int si = 0; si < 4; ++si, ++idx) {
            ModelSpec spec;
            spec.arch = defs[mi].arch;
            spec.attention = defs[mi].attn;
            spec.layers = defs[mi].layers;
            spec.n_con = a.ncon;
            spec.n_symbols = TaskConfig::standard(kSubsets[si], spec.d).n_symbols;
            TrainConfig cfg = scale_config(a, epochs, derive_seed(a.seed, 2 * idx + 1));
            std::string tag = std::string(defs[mi].column) + "/" + kSubsets[si];
            TrainReport rep =
                train_once(spec, kSubsets[si], cfg, derive_seed(a.seed, 2 * idx), tag);
            finals[mi][si] = rep.final_accuracy;
            if (si == 0) curves[mi] = rep.evals;
        }
    }

    fs::create_directories(a.out);
    {
        std::ofstream os = open_out(fs::path(a.out) / "fig1_left.csv");
        if (a.quick) os << "# non-paper-scale\n";
        os << "epoch,lstm,mlp,cis_dpa,cis_ea\n";
        for (std::size_t k = 0; k < curves[0].size(); ++k) {
            os << curves[0][k].epoch;
            for (int mi = 0; mi < 4; ++mi) os << ',' << fmt17(curves[mi][k].accuracy);
            os << "\n";
        }
    }
    {
        std::ofstream os = open_out(fs::path(a.out) / "fig1_right.csv");
        if (a.quick) os << "# non-paper-scale\n";
        os << "tasks,lstm,mlp,cis_dpa,cis_ea\n";
        for (int si = 0; si < 4; ++si) {
            os << kSubsets[si];
            for (int mi = 0; mi < 4; ++mi) os << ',' << fmt17(finals[mi][si]);
            os << "\n";
        }
    }

    std::vector<svgplot::Series> lines(4);
    for (int mi = 0; mi < 4; ++mi) {
        lines[mi].label = defs[mi].column;
        for (const EpochPoint& p : curves[mi]) {
            lines[mi].x.push_back(p.epoch);
            lines[mi].y.push_back(p.accuracy);
        }
    }
    svgplot::write_line_svg((fs::path(a.out) / "fig1_left.svg").string(),
                            "IARC held-out accuracy", "epoch", "accuracy", lines);
    std::vector<svgplot::BarSeries> bars(4);
    std::vector<std::string> groups(kSubsets, kSubsets + 4);
    for (int mi = 0; mi < 4; ++mi) {
        bars[mi].label = defs[mi].column;
        bars[mi].values.assign(finals[mi], finals[mi] + 4);
    }
    svgplot::write_bar_svg((fs::path(a.out) / "fig1_right.svg").string(),
                           "final accuracy by task subset", "accuracy", groups, bars);

    std::cout << "final IARC accuracy:";
    for (int mi = 0; mi < 4; ++mi) std::cout << ' ' << defs[mi].column << '=' << fmt17(finals[mi][0]);
    std::cout << "\n";
    for (int mi = 0; mi < 3; ++mi)
        if (finals[3][0] < finals[mi][0])
            std::cerr << "warning: expected ordering violated, " << defs[mi].column
                      << " finished above cis_ea on IARC\n";
    return 0;
}

void add_scale_flags(CLI::App* cmd, ScaleArgs& a, const char* layer_note) {
    cmd->add_option("--layers", a.layers, layer_note);
    cmd->add_option("--epochs", a.epochs, "Training epochs (default: 8000, quick: 200)");
    cmd->add_option("--batch", a.batch, "Windows per batch")->capture_default_str();
    cmd->add_option("--lr", a.lr, "Learning rate")->capture_default_str();
    cmd->add_option("--momentum", a.momentum, "Momentum coefficient")->capture_default_str();
    cmd->add_option("--ncon", a.ncon, "Context window length")->capture_default_str();
    cmd->add_option("--seed", a.seed, "Base seed for all runs")->capture_default_str();
    cmd->add_option("--out", a.out, "Output directory")->capture_default_str();
    cmd->add_flag("--quick", a.quick, "Reduced non-paper-scale preset");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IARC task-switching benchmark: stream generation, training, reproductions"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a symbol stream and dump it as text");
    gen->add_option("--tasks", gen_args.tasks, "Task subset letters, e.g. IARC or I")
        ->capture_default_str();
    gen->add_option("--n", gen_args.n, "Symbol vocabulary size (default: 20 minus subset size)");
    gen->add_option("--len", gen_args.len, "Stream length")->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_args.out, "Output directory (stream.txt); stdout when omitted");
    gen->add_flag("--validate", gen_args.validate, "Replay the oracle over the stream");

    TrainArgs train_args;
    CLI::App* tr = app.add_subcommand("train", "Train one model and write report + checkpoints");
    tr->add_option("--tasks", train_args.tasks, "Task subset (IARC, IAR, IA, IR)")
        ->capture_default_str();
    tr->add_option("--arch", train_args.arch, "transformer, cisformer, mlp or lstm")
        ->capture_default_str();
    tr->add_option("--attn", train_args.attn, "Attention kind: dpa or ea")->capture_default_str();
    tr->add_option("--layers", train_args.layers,
                   "Layer count (default per arch: 60/12/16/2)");
    tr->add_option("--epochs", train_args.epochs, "Training epochs")->capture_default_str();
    tr->add_option("--batch", train_args.batch, "Windows per batch")->capture_default_str();
    tr->add_option("--lr", train_args.lr, "Learning rate")->capture_default_str();
    tr->add_option("--momentum", train_args.momentum, "Momentum coefficient")
        ->capture_default_str();
    tr->add_option("--ncon", train_args.ncon, "Context window length")->capture_default_str();
    tr->add_option("--seed", train_args.seed, "Seed for data and init")->capture_default_str();
    tr->add_option("--out", train_args.out, "Output directory")->capture_default_str();

    ScaleArgs t1_args;
    CLI::App* t1 = app.add_subcommand(
        "table1", "DPA/EA x IARC/IAR/IA/IR accuracy table, standard transformer");
    add_scale_flags(t1, t1_args, "Layer count (default: 60, quick: 4)");

    ScaleArgs f1_args;
    CLI::App* f1 = app.add_subcommand(
        "fig1", "Accuracy curves on IARC plus the per-subset ablation, four models");
    add_scale_flags(f1, f1_args, "Layer count for every model (default per model)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (tr->parsed()) return run_train(train_args);
        if (t1->parsed()) return run_table1(t1_args);
        if (f1->parsed()) return run_fig1(f1_args);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
