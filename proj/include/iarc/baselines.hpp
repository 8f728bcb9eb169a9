// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "iarc/model.hpp"

namespace iarc {

// Feedforward net over the flattened (position x embedding) window. Each
// layer is an (n_con*d) x (n_con*d) matrix stored dense but multiplied by a
// constant block lower-triangular mask (d x d blocks, target block t reads
// source blocks <= t), followed by relu; per-position linear readout.
// Masked entries carry exactly zero gradient, so they stay zero through
// training.
class MlpModel : public Model {
   public:
    MlpModel(const ModelSpec& spec, std::uint64_t seed);

    Value forward(Graph& g, const Tensor& inputs) override;
    std::vector<Tensor*> params() override;
    const ModelSpec& spec() const override { return spec_; }
    std::int64_t param_count() override;  // unmasked entries only

    const Tensor& mask() const { return mask_; }

   private:
    ModelSpec spec_;
    std::vector<Tensor> weights_;  // (n_con*d, n_con*d) each
    Tensor readout_;               // (n_con, d, N)
    Tensor mask_;                  // shared 0/1 mask
};

// Stacked LSTM, hidden size fixed per spec layer count; gate layout along
// the 4h axis is [input, forget, cell, output]. Logits at t come from the
// top hidden state at t, so the model is causal by construction.
class LstmModel : public Model {
   public:
    LstmModel(const ModelSpec& spec, std::uint64_t seed, int hidden = kLstmHidden);

    Value forward(Graph& g, const Tensor& inputs) override;
    std::vector<Tensor*> params() override;
    const ModelSpec& spec() const override { return spec_; }
    std::int64_t param_count() override;

    int hidden() const { return hidden_; }

   private:
    struct Layer {
        Tensor wx;  // (in_dim, 4h)
        Tensor wh;  // (h, 4h)
        Tensor b;   // (4h)
    };
    ModelSpec spec_;
    int hidden_;
    std::vector<Layer> layers_;
    Tensor readout_;  // (h, N)
};

}  // namespace iarc
