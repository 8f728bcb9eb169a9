// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/transformer.hpp"

#include <cstring>
#include <stdexcept>

namespace iarc {
namespace {

void check_inputs(const Tensor& inputs, const ModelSpec& spec, bool fixed_window) {
    if (inputs.rank() != 3 || inputs.dim(2) != spec.d)
        throw std::invalid_argument("model expects (batch, n_con, " + std::to_string(spec.d) +
                                    ") inputs, got " + inputs.shape_str());
    if (fixed_window && inputs.dim(1) != spec.n_con)
        throw std::invalid_argument("per-position weights are sized for n_con = " +
                                    std::to_string(spec.n_con) + ", got window " +
                                    std::to_string(inputs.dim(1)));
}

}  // namespace

TransformerModel::TransformerModel(const ModelSpec& spec, std::uint64_t seed) : spec_(spec) {
    spec_.validate();
    attn_ = AttentionConfig::make(spec_.attention, spec_.d, spec_.heads);
    const int d = spec_.d, hd = kFfnMult * d;
    int ord = 0;
    layers_.resize(static_cast<std::size_t>(spec_.layers));
    for (Layer& l : layers_) {
        l.wq = init_uniform_fan_in({d, d}, d, seed, ord++);
        l.wk = init_uniform_fan_in({d, d}, d, seed, ord++);
        l.wv = init_uniform_fan_in({d, d}, d, seed, ord++);
        l.w1 = init_uniform_fan_in({d, hd}, d, seed, ord++);
        l.b1 = Tensor::zeros({hd});
        ord++;
        l.w2 = init_uniform_fan_in({hd, d}, hd, seed, ord++);
    }
    // Zero readout: initial logits vanish, so the untrained model sits at the
    // uniform-prediction baseline regardless of depth.
    readout_ = Tensor::zeros({d, spec_.n_symbols});
}

std::vector<Tensor*> TransformerModel::params() {
    std::vector<Tensor*> out;
    out.reserve(layers_.size() * 6 + 1);
    for (Layer& l : layers_) {
        out.push_back(&l.wq);
        out.push_back(&l.wk);
        out.push_back(&l.wv);
        out.push_back(&l.w1);
        out.push_back(&l.b1);
        out.push_back(&l.w2);
    }
    out.push_back(&readout_);
    return out;
}

std::int64_t TransformerModel::param_count() { return iarc::param_count(spec_); }

Value TransformerModel::forward(Graph& g, const Tensor& inputs) {
    check_inputs(inputs, spec_, false);
    std::vector<Value> pv;
    for (Tensor* p : params()) pv.push_back(g.param(*p));

    Value x = g.input(inputs);
    std::size_t pi = 0;
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        Value wq = pv[pi++], wk = pv[pi++], wv = pv[pi++];
        Value w1 = pv[pi++], b1 = pv[pi++], w2 = pv[pi++];
        Value h = rms_norm(x);
        Value q = matmul(h, wq);
        Value k = matmul(h, wk);
        Value v = matmul(h, wv);
        Value a = attn_map(attn_scores(q, k, attn_), spec_.attention);
        x = add(x, attn_apply(a, v, spec_.heads));
        Value h2 = rms_norm(x);
        x = add(x, matmul(relu(add(matmul(h2, w1), b1)), w2));
    }
    return matmul(x, pv[pi]);
}

CisformerModel::CisformerModel(const ModelSpec& spec, std::uint64_t seed) : spec_(spec) {
    spec_.validate();
    attn_ = AttentionConfig::make(spec_.attention, spec_.d, spec_.heads);
    const int d = spec_.d, hd = kFfnMult * d, t = spec_.n_con;
    int ord = 0;
    layers_.resize(static_cast<std::size_t>(spec_.layers));
    for (Layer& l : layers_) {
        l.wq = init_uniform_fan_in({t, d, d}, d, seed, ord++);
        l.wk = init_uniform_fan_in({t, d, d}, d, seed, ord++);
        l.wv = init_uniform_fan_in({t, d, d}, d, seed, ord++);
        l.w1 = init_uniform_fan_in({t, d, hd}, d, seed, ord++);
        l.b1 = Tensor::zeros({t, hd});
        ord++;
        l.w2 = init_uniform_fan_in({t, hd, d}, hd, seed, ord++);
    }
    readout_ = Tensor::zeros({t, d, spec_.n_symbols});
}

std::vector<Tensor*> CisformerModel::params() {
    std::vector<Tensor*> out;
    out.reserve(layers_.size() * 6 + 1);
    for (Layer& l : layers_) {
        out.push_back(&l.wq);
        out.push_back(&l.wk);
        out.push_back(&l.wv);
        out.push_back(&l.w1);
        out.push_back(&l.b1);
        out.push_back(&l.w2);
    }
    out.push_back(&readout_);
    return out;
}

std::int64_t CisformerModel::param_count() { return iarc::param_count(spec_); }

Value CisformerModel::forward(Graph& g, const Tensor& inputs) {
    check_inputs(inputs, spec_, true);
    std::vector<Value> pv;
    for (Tensor* p : params()) pv.push_back(g.param(*p));

    Value x = g.input(inputs);
    std::size_t pi = 0;
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        Value wq = pv[pi++], wk = pv[pi++], wv = pv[pi++];
        Value w1 = pv[pi++], b1 = pv[pi++], w2 = pv[pi++];
        Value h = rms_norm(x);
        Value q = matmul_per_pos(h, wq);
        Value k = matmul_per_pos(h, wk);
        Value v = matmul_per_pos(h, wv);
        Value a = attn_map(attn_scores(q, k, attn_), spec_.attention);
        x = add(x, attn_apply(a, v, spec_.heads));
        Value h2 = rms_norm(x);
        x = add(x, matmul_per_pos(relu(add(matmul_per_pos(h2, w1), b1)), w2));
    }
    return matmul_per_pos(x, pv[pi]);
}

void CisformerModel::tie_positions_to(const TransformerModel& src) {
    if (src.spec_.layers != spec_.layers || src.spec_.d != spec_.d ||
        src.spec_.n_symbols != spec_.n_symbols || src.spec_.heads != spec_.heads)
        throw std::invalid_argument("tie_positions_to: incompatible source model");
    const int t = spec_.n_con;
    auto tile = [t](Tensor& dst, const Tensor& one) {
        for (int p = 0; p < t; ++p)
            std::memcpy(dst.data() + p * one.size(), one.data(),
                        static_cast<std::size_t>(one.size()) * sizeof(double));
    };
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const TransformerModel::Layer& s = src.layers_[li];
        Layer& l = layers_[li];
        tile(l.wq, s.wq);
        tile(l.wk, s.wk);
        tile(l.wv, s.wv);
        tile(l.w1, s.w1);
        tile(l.b1, s.b1);
        tile(l.w2, s.w2);
    }
    tile(readout_, src.readout_);
}

}  // namespace iarc
