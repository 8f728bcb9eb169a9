// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <vector>

#include "iarc/graph.hpp"
#include "iarc/tensor.hpp"

namespace iarc {

enum class AttnKind { dpa, ea };

const char* attn_kind_name(AttnKind k);
AttnKind attn_kind_from_name(const std::string& name);

// Multi-head attention parameters shared by both attention maps. beta scales
// the query-key dot product (1/sqrt(head_dim) by default); the ALiBi slope of
// head h adds slope_h * (j - i) to the score before either map is applied.
struct AttentionConfig {
    AttnKind kind = AttnKind::dpa;
    int n_heads = 4;
    int head_dim = 5;
    double beta = 1.0 / std::sqrt(5.0);
    std::vector<double> alibi_slopes;

    static AttentionConfig make(AttnKind kind, int embed_dim, int n_heads = 4);
    void validate() const;
};

// Geometric ALiBi schedule: 2^{-8 h / n} for h = 1..n (4 heads:
// 2^-2, 2^-4, 2^-6, 2^-8), strictly decreasing positive.
std::vector<double> default_alibi_slopes(int n_heads);

// EA's unnormalized weight z^2 / (1 + z^2).
inline double ea_weight(double z) { return z * z / (1.0 + z * z); }

// Rows with total EA weight below this fall back to a uniform distribution.
constexpr double kEaFallbackEps = 1e-12;

// --- single-sample functional forms, shapes (heads, n_con, head_dim) ---
// Scores on the causal triangle: z_ij = beta * (Q_i . K_j) + slope_h * (j - i)
// for j <= i; entries above the diagonal are left at zero and are not part of
// the contract.
Tensor attention_scores(const Tensor& q, const Tensor& k, const AttentionConfig& cfg);

// Causal softmax map over j <= i; rows are probability distributions, zeros
// above the diagonal.
Tensor dpa(const Tensor& scores);

// Expressive attention: w_ij = z^2/(1+z^2) normalized over j <= i, uniform
// fallback when the row weight vanishes.
Tensor ea(const Tensor& scores);

// --- graph ops, batched shapes ---
// q, k: (B, T, d) with head h occupying columns [h*head_dim, (h+1)*head_dim);
// result (B, heads, T, T) causal scores.
Value attn_scores(Value q, Value k, const AttentionConfig& cfg);
Value attn_map(Value scores, AttnKind kind);  // dpa or ea rows
// attn: (B, heads, T, T), v: (B, T, d); heads are written back concatenated,
// giving (B, T, d) with no output projection.
Value attn_apply(Value attn, Value v, int n_heads);

}  // namespace iarc
