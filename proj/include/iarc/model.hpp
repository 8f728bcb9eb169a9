// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iarc/attention.hpp"
#include "iarc/graph.hpp"
#include "iarc/tensor.hpp"

namespace iarc {

enum class Arch { transformer, cisformer, mlp, lstm };

const char* arch_name(Arch a);
Arch arch_from_name(const std::string& name);

// Architecture description, serializable as a key=value text block. The
// attention/heads fields matter only for the attention architectures; the
// LSTM always uses lstm_hidden units per layer.
struct ModelSpec {
    Arch arch = Arch::cisformer;
    AttnKind attention = AttnKind::ea;
    int layers = 12;
    int d = 20;
    int n_con = 24;
    int heads = 4;
    int n_symbols = 16;

    void validate() const;
    std::string serialize() const;
    static ModelSpec parse(const std::string& text);

    bool uses_attention() const { return arch == Arch::transformer || arch == Arch::cisformer; }
};

// Layer sizes fixed by the reference setups.
inline constexpr int kLstmHidden = 550;
inline constexpr int kFfnMult = 4;

// Closed-form parameter count (free parameters; the causal MLP's masked
// entries do not count).
std::int64_t param_count(const ModelSpec& spec);

// Next-symbol predictor over encoded windows.
class Model {
   public:
    virtual ~Model() = default;

    // inputs: (batch, n_con, d) one-hot windows; returns logits
    // (batch, n_con, n_symbols). Registers every parameter on g in params()
    // order, so Graph::param_grad(i) lines up with params()[i].
    virtual Value forward(Graph& g, const Tensor& inputs) = 0;

    // Stable ownership and order across calls.
    virtual std::vector<Tensor*> params() = 0;
    virtual const ModelSpec& spec() const = 0;

    // Free parameters (masked MLP entries excluded); equals the closed form.
    virtual std::int64_t param_count() = 0;

    // Stored tensor elements, what a checkpoint holds.
    std::int64_t stored_count();
};

// Fresh model with per-tensor seeded initialization: weights uniform in
// [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases and readouts zero.
std::unique_ptr<Model> build_model(const ModelSpec& spec, std::uint64_t seed);

// Initialization helpers shared by the concrete models. ordinal advances per
// tensor so every tensor gets an independent stream off the model seed.
Tensor init_uniform_fan_in(const std::vector<int>& shape, int fan_in, std::uint64_t model_seed,
                           int ordinal);

}  // namespace iarc
