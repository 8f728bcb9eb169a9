// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Python surface over the core: stream generation and validation, the two
// attention maps, model construction with forward evaluation, the training
// loop, and checkpoint/report I/O. Arrays cross the boundary as float64
// numpy copies; nothing is aliased.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iarc/attention.hpp"
#include "iarc/baselines.hpp"
#include "iarc/checkpoint.hpp"
#include "iarc/model.hpp"
#include "iarc/rng.hpp"
#include "iarc/stream.hpp"
#include "iarc/train.hpp"

namespace py = pybind11;
using namespace iarc;

namespace {

using CArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const Tensor& t) {
    std::vector<py::ssize_t> shape(t.shape().begin(), t.shape().end());
    py::array_t<double> out(shape);
    std::memcpy(out.mutable_data(), t.data(), sizeof(double) * static_cast<std::size_t>(t.size()));
    return out;
}

Tensor from_numpy(const CArray& arr) {
    std::vector<int> shape(static_cast<std::size_t>(arr.ndim()));
    for (py::ssize_t i = 0; i < arr.ndim(); ++i) shape[static_cast<std::size_t>(i)] = static_cast<int>(arr.shape(i));
    Tensor t(shape);
    std::memcpy(t.data(), arr.data(), sizeof(double) * static_cast<std::size_t>(t.size()));
    return t;
}

std::string one_line(std::string text) {
    for (char& c : text)
        if (c == '\n') c = ' ';
    while (!text.empty() && text.back() == ' ') text.pop_back();
    return text;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Task-switching benchmark core: streams, attention maps, models, training.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<TokenStream>(m, "TokenStream", "Symbol sequence plus the aligned control tape.")
        .def(py::init<>())
        .def_readwrite("symbols", &TokenStream::symbols)
        .def_property(
            "tape",
            [](const TokenStream& s) {
                py::list out;
                for (const auto& t : s.tape) {
                    if (t)
                        out.append(py::str(std::string(1, control_token_char(*t))));
                    else
                        out.append(py::none());
                }
                return out;
            },
            [](TokenStream& s, const std::vector<std::optional<std::string>>& tape) {
                std::vector<std::optional<ControlToken>> out;
                out.reserve(tape.size());
                for (const auto& t : tape) {
                    if (!t || *t == "-") {
                        out.emplace_back(std::nullopt);
                        continue;
                    }
                    std::optional<ControlToken> tok;
                    if (t->size() == 1) tok = control_token_from_char((*t)[0]);
                    if (!tok) throw std::invalid_argument("tape entries must be None or one of I/A/R/C");
                    out.emplace_back(*tok);
                }
                s.tape = std::move(out);
            },
            "Per-position control token as a one-letter string, None where empty.")
        .def("__len__", [](const TokenStream& s) { return s.length(); });

    py::class_<TaskConfig>(m, "TaskConfig", "Task subset plus vocabulary/spacing parameters.")
        .def_static("standard", &TaskConfig::standard, py::arg("tasks"), py::arg("embed_dim") = 20,
                    py::arg("seed") = 0,
                    "Subset named by its letters; N is chosen so n_symbols + len(tasks) == embed_dim.")
        .def_property_readonly("tasks", &TaskConfig::tasks_str)
        .def_readwrite("n_symbols", &TaskConfig::n_symbols)
        .def_readwrite("spacing_min", &TaskConfig::spacing_min)
        .def_readwrite("spacing_max", &TaskConfig::spacing_max)
        .def_readwrite("seed", &TaskConfig::seed)
        .def("n_control", &TaskConfig::n_control)
        .def("embed_dim", &TaskConfig::embed_dim)
        .def("validate", &TaskConfig::validate)
        .def("__repr__", [](const TaskConfig& c) {
            std::ostringstream os;
            os << "TaskConfig(tasks='" << c.tasks_str() << "', n_symbols=" << c.n_symbols
               << ", spacing=[" << c.spacing_min << ", " << c.spacing_max << "], seed=" << c.seed
               << ")";
            return os.str();
        });

    m.def("generate_stream", &generate_stream, py::arg("config"), py::arg("length"),
          "Stochastic stream opening with a task setter; deterministic given config.seed.");
    m.def("validate_stream", &validate_stream, py::arg("stream"), py::arg("config"),
          "True iff replaying the oracle over (symbols, tape) reproduces symbols.");
    m.def(
        "slice_windows",
        [](const TokenStream& s, const TaskConfig& cfg, int n_con, int count, std::uint64_t seed) {
            auto rng = make_rng(seed);
            EncodedBatch b = slice_windows(s, cfg, n_con, count, rng);
            py::array_t<std::int64_t> targets({count, n_con});
            auto* tp = targets.mutable_data();
            for (std::size_t i = 0; i < b.targets.size(); ++i) tp[i] = b.targets[i];
            return py::make_tuple(to_numpy(b.inputs), targets);
        },
        py::arg("stream"), py::arg("config"), py::arg("n_con"), py::arg("count"), py::arg("seed"),
        "Random one-hot windows: (inputs (count, n_con, d), targets (count, n_con)).");
    m.def(
        "dump_stream", [](const TokenStream& s) { return dump_stream(s); }, py::arg("stream"),
        "Text dump, one 'index<TAB>symbol<TAB>tape' line per position.");
    m.def(
        "parse_stream_dump",
        [](const std::string& text) {
            std::istringstream is(text);
            return parse_stream_dump(is);
        },
        py::arg("text"));

    m.def(
        "attention_scores",
        [](const CArray& q, const CArray& k) {
            Tensor tq = from_numpy(q), tk = from_numpy(k);
            if (tq.rank() != 3) throw std::invalid_argument("expected q of shape (heads, n_con, head_dim)");
            AttentionConfig cfg = AttentionConfig::make(AttnKind::dpa, tq.dim(0) * tq.dim(2), tq.dim(0));
            return to_numpy(attention_scores(tq, tk, cfg));
        },
        py::arg("q"), py::arg("k"),
        "Causal scores with the default scale and ALiBi slopes; q, k: (heads, n_con, head_dim).");
    m.def(
        "dpa", [](const CArray& z) { return to_numpy(dpa(from_numpy(z))); }, py::arg("scores"),
        "Causal softmax rows over the last two (square) axes.");
    m.def(
        "ea", [](const CArray& z) { return to_numpy(ea(from_numpy(z))); }, py::arg("scores"),
        "z^2/(1+z^2) rows, normalized, uniform fallback on vanishing rows.");

    py::class_<ModelSpec>(m, "ModelSpec", "Architecture description, serializable as key=value text.")
        .def(py::init<>())
        .def_property(
            "arch", [](const ModelSpec& s) { return std::string(arch_name(s.arch)); },
            [](ModelSpec& s, const std::string& v) { s.arch = arch_from_name(v); })
        .def_property(
            "attention", [](const ModelSpec& s) { return std::string(attn_kind_name(s.attention)); },
            [](ModelSpec& s, const std::string& v) { s.attention = attn_kind_from_name(v); })
        .def_readwrite("layers", &ModelSpec::layers)
        .def_readwrite("d", &ModelSpec::d)
        .def_readwrite("n_con", &ModelSpec::n_con)
        .def_readwrite("heads", &ModelSpec::heads)
        .def_readwrite("n_symbols", &ModelSpec::n_symbols)
        .def("validate", &ModelSpec::validate)
        .def("serialize", &ModelSpec::serialize)
        .def_static("parse", &ModelSpec::parse, py::arg("text"))
        .def("__repr__",
             [](const ModelSpec& s) { return "ModelSpec(" + one_line(s.serialize()) + ")"; });

    m.def("param_count", &param_count, py::arg("spec"),
          "Closed-form free-parameter count for the spec.");

    py::class_<Model>(m, "Model", "Next-symbol predictor over encoded windows.")
        .def(
            "forward",
            [](Model& model, const CArray& inputs) {
                Graph g;
                return to_numpy(model.forward(g, from_numpy(inputs)).val());
            },
            py::arg("inputs"), "Logits (batch, n_con, n_symbols) for one-hot windows (batch, n_con, d).")
        .def("param_count", &Model::param_count)
        .def("stored_count", &Model::stored_count)
        .def_property_readonly("spec", [](const Model& model) { return model.spec(); })
        .def("get_parameters",
             [](Model& model) {
                 py::list out;
                 for (Tensor* t : model.params()) out.append(to_numpy(*t));
                 return out;
             })
        .def("set_parameters", [](Model& model, const std::vector<CArray>& arrays) {
            auto params = model.params();
            if (arrays.size() != params.size())
                throw std::invalid_argument("expected " + std::to_string(params.size()) + " arrays, got " +
                                            std::to_string(arrays.size()));
            std::vector<Tensor> staged;
            staged.reserve(arrays.size());
            for (std::size_t i = 0; i < arrays.size(); ++i) {
                Tensor t = from_numpy(arrays[i]);
                if (t.shape() != params[i]->shape())
                    throw std::invalid_argument("array " + std::to_string(i) + " has shape " +
                                                t.shape_str() + ", expected " + params[i]->shape_str());
                staged.push_back(std::move(t));
            }
            for (std::size_t i = 0; i < staged.size(); ++i) *params[i] = std::move(staged[i]);
        });

    m.def("build_model", &build_model, py::arg("spec"), py::arg("seed"),
          "Fresh model with seeded initialization and zero readout.");

    m.def(
        "save_checkpoint",
        [](Model& model, const std::string& path) { save_checkpoint(model.params(), path); },
        py::arg("model"), py::arg("path"), "Binary parameter snapshot.");
    m.def(
        "load_checkpoint",
        [](Model& model, const std::string& path) { load_checkpoint(model.params(), path); },
        py::arg("model"), py::arg("path"), "Restores parameters; every shape must match.");

    py::class_<TrainConfig>(m, "TrainConfig", "Training protocol knobs; defaults are the reference protocol.")
        .def(py::init<>())
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("lr", &TrainConfig::lr)
        .def_readwrite("momentum", &TrainConfig::momentum)
        .def_readwrite("n_con", &TrainConfig::n_con)
        .def_readwrite("eval_every", &TrainConfig::eval_every)
        .def_readwrite("eval_batches", &TrainConfig::eval_batches)
        .def_readwrite("micro_batch", &TrainConfig::micro_batch)
        .def_readwrite("seed", &TrainConfig::seed)
        .def("validate", &TrainConfig::validate);

    py::class_<EpochPoint>(m, "EpochPoint")
        .def_readonly("epoch", &EpochPoint::epoch)
        .def_readonly("loss", &EpochPoint::loss)
        .def_readonly("accuracy", &EpochPoint::accuracy)
        .def("__repr__", [](const EpochPoint& p) {
            std::ostringstream os;
            os << "EpochPoint(epoch=" << p.epoch << ", loss=" << p.loss << ", accuracy=" << p.accuracy
               << ")";
            return os.str();
        });

    py::class_<EvalResult>(m, "EvalResult")
        .def_readonly("loss", &EvalResult::loss)
        .def_readonly("accuracy", &EvalResult::accuracy)
        .def("__repr__", [](const EvalResult& r) {
            std::ostringstream os;
            os << "EvalResult(loss=" << r.loss << ", accuracy=" << r.accuracy << ")";
            return os.str();
        });

    py::class_<TrainReport>(m, "TrainReport")
        .def_readonly("points", &TrainReport::points)
        .def_readonly("evals", &TrainReport::evals)
        .def_readonly("final_loss", &TrainReport::final_loss)
        .def_readonly("final_accuracy", &TrainReport::final_accuracy)
        .def_readonly("wall_seconds", &TrainReport::wall_seconds)
        .def_readonly("model_spec", &TrainReport::model_spec)
        .def_readonly("tasks", &TrainReport::tasks)
        .def_readonly("config", &TrainReport::config)
        .def_readonly("extras", &TrainReport::extras);

    m.def(
        "evaluate",
        [](Model& model, const TaskConfig& task, int n_batches, std::uint64_t seed, int batch_size,
           int micro_batch) { return evaluate(model, task, n_batches, seed, batch_size, micro_batch); },
        py::arg("model"), py::arg("task"), py::arg("n_batches"), py::arg("seed"),
        py::arg("batch_size") = 200, py::arg("micro_batch") = 50,
        py::call_guard<py::gil_scoped_release>(),
        "Mean loss/accuracy over fresh batches, deterministic given seed.");
    m.def(
        "train",
        [](Model& model, const TaskConfig& task, const TrainConfig& cfg) {
            return train(model, task, cfg);
        },
        py::arg("model"), py::arg("task"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>(),
        "One momentum-SGD step per fresh batch; data seeds derive from config.seed.");
    m.def(
        "write_report_csv",
        [](const TrainReport& report, const std::string& path) { write_report_csv(report, path); },
        py::arg("report"), py::arg("path"),
        "Per-epoch rows plus a '# results' block; byte-stable across equal runs.");
}
