// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "iarc/tensor.hpp"

namespace iarc {

// Classical SGD with momentum: v <- m*v + g, p <- p - lr*v. Velocities are
// zero-initialized and live with the optimizer; the parameter tensors stay
// owned by the model.
class SgdMomentum {
   public:
    SgdMomentum(std::vector<Tensor*> params, double lr, double momentum);

    // grads must line up with the params passed at construction.
    void step(const std::vector<Tensor>& grads);

    double lr() const { return lr_; }
    double momentum() const { return momentum_; }
    int n_params() const { return static_cast<int>(params_.size()); }
    const Tensor& velocity(int i) const { return velocities_[static_cast<std::size_t>(i)]; }

   private:
    std::vector<Tensor*> params_;
    std::vector<Tensor> velocities_;
    double lr_;
    double momentum_;
};

}  // namespace iarc
