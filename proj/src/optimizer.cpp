// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/optimizer.hpp"

#include <stdexcept>

namespace iarc {

SgdMomentum::SgdMomentum(std::vector<Tensor*> params, double lr, double momentum)
    : params_(std::move(params)), lr_(lr), momentum_(momentum) {
    // lr = 0 is legal: it freezes the parameters while still exercising the
    // full update path, which is useful for no-op training checks.
    if (!(lr_ >= 0.0)) throw std::invalid_argument("learning rate must be non-negative");
    if (momentum_ < 0.0 || momentum_ >= 1.0) throw std::invalid_argument("momentum must be in [0, 1)");
    velocities_.reserve(params_.size());
    for (Tensor* p : params_) velocities_.emplace_back(p->shape());
}

void SgdMomentum::step(const std::vector<Tensor>& grads) {
    if (grads.size() != params_.size())
        throw std::invalid_argument("optimizer got " + std::to_string(grads.size()) + " grads for " +
                                    std::to_string(params_.size()) + " params");
    for (std::size_t i = 0; i < params_.size(); ++i) {
        Tensor& p = *params_[i];
        Tensor& v = velocities_[i];
        const Tensor& g = grads[i];
        Tensor::check_same_shape(p, g, "sgd step");
        double* pd = p.data();
        double* vd = v.data();
        const double* gd = g.data();
        for (std::int64_t k = 0; k < p.size(); ++k) {
            vd[k] = momentum_ * vd[k] + gd[k];
            pd[k] -= lr_ * vd[k];
        }
    }
}

}  // namespace iarc
