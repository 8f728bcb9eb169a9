// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/baselines.hpp"

#include <stdexcept>

#include "iarc/rng.hpp"

namespace iarc {

MlpModel::MlpModel(const ModelSpec& spec, std::uint64_t seed) : spec_(spec) {
    spec_.validate();
    const int d = spec_.d, t = spec_.n_con, td = t * d;
    mask_ = Tensor::zeros({td, td});
    for (int i = 0; i < td; ++i)
        for (int j = 0; j < td; ++j)
            if (i / d <= j / d) mask_.data()[static_cast<std::int64_t>(i) * td + j] = 1.0;

    weights_.reserve(static_cast<std::size_t>(spec_.layers));
    for (int l = 0; l < spec_.layers; ++l) {
        // Column j feeds output position j/d, which sees (j/d + 1) source
        // blocks; scale its draws by that fan-in. Masked entries stay zero
        // and consume no draws.
        Tensor w = Tensor::zeros({td, td});
        auto rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(l)));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int i = 0; i < td; ++i)
            for (int j = 0; j < td; ++j)
                if (i / d <= j / d) {
                    double bound = 1.0 / std::sqrt(static_cast<double>((j / d + 1) * d));
                    w.data()[static_cast<std::int64_t>(i) * td + j] = bound * unit(rng);
                }
        weights_.push_back(std::move(w));
    }
    readout_ = Tensor::zeros({t, d, spec_.n_symbols});
}

std::vector<Tensor*> MlpModel::params() {
    std::vector<Tensor*> out;
    out.reserve(weights_.size() + 1);
    for (Tensor& w : weights_) out.push_back(&w);
    out.push_back(&readout_);
    return out;
}

std::int64_t MlpModel::param_count() { return iarc::param_count(spec_); }

Value MlpModel::forward(Graph& g, const Tensor& inputs) {
    if (inputs.rank() != 3 || inputs.dim(1) != spec_.n_con || inputs.dim(2) != spec_.d)
        throw std::invalid_argument("mlp expects (batch, " + std::to_string(spec_.n_con) + ", " +
                                    std::to_string(spec_.d) + ") inputs, got " + inputs.shape_str());
    std::vector<Value> pv;
    for (Tensor* p : params()) pv.push_back(g.param(*p));

    const int batch = inputs.dim(0), td = spec_.n_con * spec_.d;
    Value m = g.constant(mask_);
    Value x = reshape(g.input(inputs), {batch, td});
    for (std::size_t l = 0; l < weights_.size(); ++l) x = relu(matmul(x, mul(pv[l], m)));
    return matmul_per_pos(reshape(x, {batch, spec_.n_con, spec_.d}), pv[weights_.size()]);
}

LstmModel::LstmModel(const ModelSpec& spec, std::uint64_t seed, int hidden)
    : spec_(spec), hidden_(hidden) {
    spec_.validate();
    if (hidden_ < 1) throw std::invalid_argument("lstm hidden size must be positive");
    int ord = 0;
    layers_.resize(static_cast<std::size_t>(spec_.layers));
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const int in_dim = l == 0 ? spec_.d : hidden_;
        layers_[l].wx = init_uniform_fan_in({in_dim, 4 * hidden_}, in_dim, seed, ord++);
        layers_[l].wh = init_uniform_fan_in({hidden_, 4 * hidden_}, hidden_, seed, ord++);
        layers_[l].b = Tensor::zeros({4 * hidden_});
        ord++;
    }
    readout_ = Tensor::zeros({hidden_, spec_.n_symbols});
}

std::vector<Tensor*> LstmModel::params() {
    std::vector<Tensor*> out;
    out.reserve(layers_.size() * 3 + 1);
    for (Layer& l : layers_) {
        out.push_back(&l.wx);
        out.push_back(&l.wh);
        out.push_back(&l.b);
    }
    out.push_back(&readout_);
    return out;
}

std::int64_t LstmModel::param_count() {
    if (hidden_ == kLstmHidden) return iarc::param_count(spec_);
    std::int64_t total = 0;
    for (Tensor* p : params()) total += p->size();
    return total;
}

Value LstmModel::forward(Graph& g, const Tensor& inputs) {
    if (inputs.rank() != 3 || inputs.dim(2) != spec_.d)
        throw std::invalid_argument("lstm expects (batch, n_con, " + std::to_string(spec_.d) +
                                    ") inputs, got " + inputs.shape_str());
    std::vector<Value> pv;
    for (Tensor* p : params()) pv.push_back(g.param(*p));

    const int batch = inputs.dim(0), steps = inputs.dim(1), h = hidden_;
    Value x = g.input(inputs);
    std::vector<Value> seq;
    seq.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) seq.push_back(select_time(x, t));

    std::size_t pi = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Value wx = pv[pi++], wh = pv[pi++], b = pv[pi++];
        Value hid = g.constant(Tensor::zeros({batch, h}));
        Value cell = g.constant(Tensor::zeros({batch, h}));
        for (int t = 0; t < steps; ++t) {
            Value z = add(add(matmul(seq[static_cast<std::size_t>(t)], wx), matmul(hid, wh)), b);
            Value in_g = sigmoid(slice_last(z, 0, h));
            Value forget_g = sigmoid(slice_last(z, h, h));
            Value cand = tanh_op(slice_last(z, 2 * h, h));
            Value out_g = sigmoid(slice_last(z, 3 * h, h));
            cell = add(mul(forget_g, cell), mul(in_g, cand));
            hid = mul(out_g, tanh_op(cell));
            seq[static_cast<std::size_t>(t)] = hid;
        }
    }
    std::vector<Value> logits;
    logits.reserve(seq.size());
    for (Value hs : seq) logits.push_back(matmul(hs, pv[pi]));
    return stack_time(logits);
}

}  // namespace iarc
