// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/manifest.hpp"

#include <sstream>
#include <stdexcept>

namespace iarc {

TaskConfig ExperimentManifest::task_config() const {
    TaskConfig task = TaskConfig::standard(tasks, model.d);
    task.spacing_min = spacing_min;
    task.spacing_max = spacing_max;
    return task;
}

void ExperimentManifest::validate() const {
    if (id.empty()) throw std::invalid_argument("manifest needs an id");
    if (out_dir.empty()) throw std::invalid_argument("manifest needs an output directory");
    model.validate();
    train.validate();
    TaskConfig task = task_config();
    task.validate();
    if (task.n_symbols != model.n_symbols)
        throw std::invalid_argument("tasks " + tasks + " imply " +
                                    std::to_string(task.n_symbols) + " symbols at d=" +
                                    std::to_string(model.d) + ", model spec says " +
                                    std::to_string(model.n_symbols));
    if (train.n_con != model.n_con)
        throw std::invalid_argument("train n_con differs from model n_con");
}

std::string ExperimentManifest::serialize() const {
    std::ostringstream os;
    os << "id=" << id << "\n"
       << "out_dir=" << out_dir << "\n"
       << "tasks=" << tasks << "\n"
       << "spacing_min=" << spacing_min << "\n"
       << "spacing_max=" << spacing_max << "\n"
       << model.serialize()  // arch/attention/layers/d/n_con/heads/n_symbols
       << "epochs=" << train.epochs << "\n"
       << "batch_size=" << train.batch_size << "\n";
    std::ostringstream num;
    num.precision(17);
    num << "lr=" << train.lr << "\n"
        << "momentum=" << train.momentum << "\n";
    os << num.str()
       << "eval_every=" << train.eval_every << "\n"
       << "eval_batches=" << train.eval_batches << "\n"
       << "micro_batch=" << train.micro_batch << "\n"
       << "seed=" << train.seed << "\n";
    return os.str();
}

ExperimentManifest ExperimentManifest::parse(const std::string& text) {
    ExperimentManifest m;
    std::ostringstream model_lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad manifest line: \"" + line + "\"");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "id") {
            m.id = value;
        } else if (key == "out_dir") {
            m.out_dir = value;
        } else if (key == "tasks") {
            m.tasks = value;
        } else if (key == "spacing_min") {
            m.spacing_min = std::stoi(value);
        } else if (key == "spacing_max") {
            m.spacing_max = std::stoi(value);
        } else if (key == "epochs") {
            m.train.epochs = std::stoi(value);
        } else if (key == "batch_size") {
            m.train.batch_size = std::stoi(value);
        } else if (key == "lr") {
            m.train.lr = std::stod(value);
        } else if (key == "momentum") {
            m.train.momentum = std::stod(value);
        } else if (key == "eval_every") {
            m.train.eval_every = std::stoi(value);
        } else if (key == "eval_batches") {
            m.train.eval_batches = std::stoi(value);
        } else if (key == "micro_batch") {
            m.train.micro_batch = std::stoi(value);
        } else if (key == "seed") {
            m.train.seed = std::stoull(value);
        } else {
            // Model keys are delegated so the two parsers cannot drift.
            model_lines << line << "\n";
        }
    }
    m.model = ModelSpec::parse(model_lines.str());
    m.train.n_con = m.model.n_con;
    m.validate();
    return m;
}

}  // namespace iarc
