// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iarc/rng.hpp"

namespace iarc {
namespace {

double eval_loss(const std::function<Value(Graph&)>& build) {
    Graph g;
    Value loss = build(g);
    return loss.val().item();
}

}  // namespace

GradCheckResult grad_check(const std::function<Value(Graph&)>& build,
                           const std::vector<Tensor*>& params, int samples_per_param,
                           std::uint64_t seed, double step) {
    // Registration order inside build is up to the compiler (params created as
    // function arguments may be registered in any order), so match the caller's
    // list to the graph's slots by tensor identity.
    std::vector<Tensor> analytic(params.size());
    {
        Graph g;
        Value loss = build(g);
        if (g.n_params() != static_cast<int>(params.size()))
            throw std::invalid_argument("grad_check: build registered " + std::to_string(g.n_params()) +
                                        " params, expected " + std::to_string(params.size()));
        g.backward(loss);
        for (int slot = 0; slot < g.n_params(); ++slot) {
            auto it = std::find(params.begin(), params.end(), g.param_tensor(slot));
            if (it == params.end())
                throw std::invalid_argument("grad_check: build registered a tensor not in params");
            analytic[static_cast<std::size_t>(it - params.begin())] = g.param_grad(slot);
        }
    }

    auto rng = make_rng(seed);
    GradCheckResult res;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        Tensor& p = *params[pi];
        std::vector<std::int64_t> coords;
        if (p.size() <= samples_per_param) {
            coords.resize(static_cast<std::size_t>(p.size()));
            for (std::int64_t k = 0; k < p.size(); ++k) coords[static_cast<std::size_t>(k)] = k;
        } else {
            std::uniform_int_distribution<std::int64_t> pick(0, p.size() - 1);
            for (int s = 0; s < samples_per_param; ++s) coords.push_back(pick(rng));
        }
        for (std::int64_t k : coords) {
            double saved = p.data()[k];
            p.data()[k] = saved + step;
            double up = eval_loss(build);
            p.data()[k] = saved - step;
            double down = eval_loss(build);
            p.data()[k] = saved;
            double fd = (up - down) / (2.0 * step);
            double an = analytic[pi].data()[k];
            double denom = std::max(std::abs(an), std::abs(fd));
            double err = denom < 1e-8 ? std::abs(an - fd) : std::abs(an - fd) / denom;
            res.max_rel_err = std::max(res.max_rel_err, err);
            ++res.checked;
        }
    }
    return res;
}

}  // namespace iarc
