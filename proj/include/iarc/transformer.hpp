// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "iarc/model.hpp"

namespace iarc {

// Pre-norm residual blocks: [rms_norm -> multi-head attention (concatenated
// heads, no output projection) -> residual -> rms_norm -> relu FFN (hidden
// bias only) -> residual] x layers, then a linear readout. No final norm.
// Weights are broadcast over positions; the readout d x N is shared.
class TransformerModel : public Model {
   public:
    TransformerModel(const ModelSpec& spec, std::uint64_t seed);

    Value forward(Graph& g, const Tensor& inputs) override;
    std::vector<Tensor*> params() override;
    const ModelSpec& spec() const override { return spec_; }
    std::int64_t param_count() override;

   private:
    friend class CisformerModel;
    struct Layer {
        Tensor wq, wk, wv;  // (d, d)
        Tensor w1, b1, w2;  // (d, 4d), (4d), (4d, d)
    };
    ModelSpec spec_;
    AttentionConfig attn_;
    std::vector<Layer> layers_;
    Tensor readout_;  // (d, N)
};

// Same block structure with an independent copy of every matrix per context
// position (weights shaped (n_con, ...)), including the readout.
class CisformerModel : public Model {
   public:
    CisformerModel(const ModelSpec& spec, std::uint64_t seed);

    Value forward(Graph& g, const Tensor& inputs) override;
    std::vector<Tensor*> params() override;
    const ModelSpec& spec() const override { return spec_; }
    std::int64_t param_count() override;

    // Copies one weight set into every position slot; the result computes
    // exactly what the equally-parameterized broadcast transformer computes.
    void tie_positions_to(const TransformerModel& src);

   private:
    struct Layer {
        Tensor wq, wk, wv;  // (n_con, d, d)
        Tensor w1, b1, w2;  // (n_con, d, 4d), (n_con, 4d), (n_con, 4d, d)
    };
    ModelSpec spec_;
    AttentionConfig attn_;
    std::vector<Layer> layers_;
    Tensor readout_;  // (n_con, d, N)
};

}  // namespace iarc
