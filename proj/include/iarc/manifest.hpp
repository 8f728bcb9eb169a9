// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "iarc/model.hpp"
#include "iarc/stream.hpp"
#include "iarc/train.hpp"

namespace iarc {

// Everything needed to reproduce one training run: model spec, task subset,
// spacing bounds, and the training protocol. Flat key=value text on disk;
// rerunning a manifest with equal seeds regenerates its outputs exactly.
struct ExperimentManifest {
    std::string id = "exp";
    std::string out_dir = ".";
    std::string tasks = "IARC";
    int spacing_min = 3;
    int spacing_max = 9;
    ModelSpec model;
    TrainConfig train;

    // Task config implied by the manifest; the data seed comes from
    // train.seed, so no separate task seed is stored.
    TaskConfig task_config() const;

    void validate() const;
    std::string serialize() const;
    static ExperimentManifest parse(const std::string& text);
};

}  // namespace iarc
