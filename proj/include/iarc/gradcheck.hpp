// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "iarc/graph.hpp"

namespace iarc {

struct GradCheckResult {
    double max_rel_err = 0.0;
    int checked = 0;
};

// Central finite differences against reverse-mode gradients. build must
// construct a fresh graph over the current contents of params (registering
// them in the given order) and return a scalar loss; it is re-run for each
// probe, so it has to be deterministic. samples_per_param coordinates are
// probed per tensor (all of them when the tensor is smaller).
GradCheckResult grad_check(const std::function<Value(Graph&)>& build,
                           const std::vector<Tensor*>& params, int samples_per_param,
                           std::uint64_t seed, double step = 1e-5);

}  // namespace iarc
