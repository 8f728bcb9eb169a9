// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/attention.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iarc {
namespace {

// One causal score matrix (T x T, upper triangle untouched) for a single
// head. q and k point at the head's first row; rows are row_stride apart so
// the same kernel serves (heads, T, head_dim) and (B, T, d) layouts.
void causal_score_matrix(const double* q, const double* k, int n_con, int head_dim,
                         std::int64_t row_stride, double beta, double slope, double* z) {
    for (int i = 0; i < n_con; ++i) {
        const double* qi = q + i * row_stride;
        double* zrow = z + static_cast<std::int64_t>(i) * n_con;
        for (int j = 0; j <= i; ++j) {
            const double* kj = k + j * row_stride;
            double acc = 0.0;
            for (int c = 0; c < head_dim; ++c) acc += qi[c] * kj[c];
            zrow[j] = beta * acc + slope * (j - i);
        }
    }
}

// Softmax over the first len entries of a causal row.
void dpa_row(const double* z, double* a, int len) {
    double mx = z[0];
    for (int j = 1; j < len; ++j) mx = std::max(mx, z[j]);
    double s = 0.0;
    for (int j = 0; j < len; ++j) {
        a[j] = std::exp(z[j] - mx);
        s += a[j];
    }
    for (int j = 0; j < len; ++j) a[j] /= s;
}

// z^2/(1+z^2) over the first len entries, normalized; uniform when the row
// weight vanishes.
void ea_row(const double* z, double* a, int len) {
    double s = 0.0;
    for (int j = 0; j < len; ++j) {
        a[j] = ea_weight(z[j]);
        s += a[j];
    }
    if (s < kEaFallbackEps) {
        double u = 1.0 / len;
        for (int j = 0; j < len; ++j) a[j] = u;
        return;
    }
    for (int j = 0; j < len; ++j) a[j] /= s;
}

void map_causal_rows(const double* z, double* a, std::int64_t n_mats, int n_con, AttnKind kind) {
    for (std::int64_t m = 0; m < n_mats; ++m) {
        const double* zm = z + m * n_con * n_con;
        double* am = a + m * n_con * n_con;
        for (int i = 0; i < n_con; ++i) {
            if (kind == AttnKind::dpa)
                dpa_row(zm + static_cast<std::int64_t>(i) * n_con, am + static_cast<std::int64_t>(i) * n_con, i + 1);
            else
                ea_row(zm + static_cast<std::int64_t>(i) * n_con, am + static_cast<std::int64_t>(i) * n_con, i + 1);
        }
    }
}

void check_square_tail(const Tensor& t, const char* op) {
    if (t.rank() < 2 || t.dim(t.rank() - 1) != t.dim(t.rank() - 2))
        throw std::invalid_argument(std::string(op) + ": expected trailing square dims, got " + t.shape_str());
}

}  // namespace

const char* attn_kind_name(AttnKind k) { return k == AttnKind::dpa ? "dpa" : "ea"; }

AttnKind attn_kind_from_name(const std::string& name) {
    if (name == "dpa") return AttnKind::dpa;
    if (name == "ea") return AttnKind::ea;
    throw std::invalid_argument("unknown attention kind: " + name);
}

std::vector<double> default_alibi_slopes(int n_heads) {
    std::vector<double> slopes(static_cast<std::size_t>(n_heads));
    for (int h = 0; h < n_heads; ++h)
        slopes[static_cast<std::size_t>(h)] = std::pow(2.0, -8.0 * (h + 1) / n_heads);
    return slopes;
}

AttentionConfig AttentionConfig::make(AttnKind kind, int embed_dim, int n_heads) {
    if (n_heads <= 0 || embed_dim % n_heads != 0)
        throw std::invalid_argument("embed dim " + std::to_string(embed_dim) +
                                    " not divisible by " + std::to_string(n_heads) + " heads");
    AttentionConfig cfg;
    cfg.kind = kind;
    cfg.n_heads = n_heads;
    cfg.head_dim = embed_dim / n_heads;
    cfg.beta = 1.0 / std::sqrt(static_cast<double>(cfg.head_dim));
    cfg.alibi_slopes = default_alibi_slopes(n_heads);
    return cfg;
}

void AttentionConfig::validate() const {
    if (n_heads <= 0 || head_dim <= 0) throw std::invalid_argument("attention heads/head_dim must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("attention beta must be positive");
    if (alibi_slopes.size() != static_cast<std::size_t>(n_heads))
        throw std::invalid_argument("expected one ALiBi slope per head");
}

Tensor attention_scores(const Tensor& q, const Tensor& k, const AttentionConfig& cfg) {
    cfg.validate();
    Tensor::check_same_shape(q, k, "attention_scores");
    if (q.rank() != 3 || q.dim(0) != cfg.n_heads || q.dim(2) != cfg.head_dim)
        throw std::invalid_argument("attention_scores: expected (heads, n_con, head_dim), got " + q.shape_str());
    int n_con = q.dim(1);
    Tensor out({cfg.n_heads, n_con, n_con});
    std::int64_t plane = static_cast<std::int64_t>(n_con) * cfg.head_dim;
    for (int h = 0; h < cfg.n_heads; ++h)
        causal_score_matrix(q.data() + h * plane, k.data() + h * plane, n_con, cfg.head_dim,
                            cfg.head_dim, cfg.beta, cfg.alibi_slopes[static_cast<std::size_t>(h)],
                            out.data() + static_cast<std::int64_t>(h) * n_con * n_con);
    return out;
}

Tensor dpa(const Tensor& scores) {
    check_square_tail(scores, "dpa");
    int n_con = scores.dim(scores.rank() - 1);
    Tensor out(scores.shape());
    map_causal_rows(scores.data(), out.data(), scores.size() / (n_con * n_con), n_con, AttnKind::dpa);
    return out;
}

Tensor ea(const Tensor& scores) {
    check_square_tail(scores, "ea");
    int n_con = scores.dim(scores.rank() - 1);
    Tensor out(scores.shape());
    map_causal_rows(scores.data(), out.data(), scores.size() / (n_con * n_con), n_con, AttnKind::ea);
    return out;
}

Value attn_scores(Value q, Value k, const AttentionConfig& cfg) {
    cfg.validate();
    Graph& g = *q.graph;
    const Tensor& tq = q.val();
    const Tensor& tk = k.val();
    Tensor::check_same_shape(tq, tk, "attn_scores");
    if (tq.rank() != 3 || tq.dim(2) != cfg.n_heads * cfg.head_dim)
        throw std::invalid_argument("attn_scores: expected (batch, n_con, heads*head_dim), got " + tq.shape_str());
    int batch = tq.dim(0), n_con = tq.dim(1), d = tq.dim(2);
    int heads = cfg.n_heads, hd = cfg.head_dim;
    double beta = cfg.beta;
    std::vector<double> slopes = cfg.alibi_slopes;

    Tensor out({batch, heads, n_con, n_con});
    std::int64_t sample = static_cast<std::int64_t>(n_con) * d;
    std::int64_t mat = static_cast<std::int64_t>(n_con) * n_con;
    for (int b = 0; b < batch; ++b)
        for (int h = 0; h < heads; ++h)
            causal_score_matrix(tq.data() + b * sample + h * hd, tk.data() + b * sample + h * hd,
                                n_con, hd, d, beta, slopes[static_cast<std::size_t>(h)],
                                out.data() + (static_cast<std::int64_t>(b) * heads + h) * mat);

    int id = g.emit("attn_scores", {q.id, k.id}, std::move(out),
                    [qi = q.id, ki = k.id, batch, heads, n_con, d, hd, beta, sample, mat](Graph& gg, int self) {
                        Tensor* gq = gg.grad_accumulator(qi);
                        Tensor* gk = gg.grad_accumulator(ki);
                        if (!gq && !gk) return;
                        const double* gz = gg.grad(self).data();
                        const double* tq = gg.value(qi).data();
                        const double* tk = gg.value(ki).data();
                        for (int b = 0; b < batch; ++b)
                            for (int h = 0; h < heads; ++h) {
                                const double* gm = gz + (static_cast<std::int64_t>(b) * heads + h) * mat;
                                for (int i = 0; i < n_con; ++i)
                                    for (int j = 0; j <= i; ++j) {
                                        double gv = beta * gm[static_cast<std::int64_t>(i) * n_con + j];
                                        if (gv == 0.0) continue;
                                        std::int64_t qoff = b * sample + static_cast<std::int64_t>(i) * d + h * hd;
                                        std::int64_t koff = b * sample + static_cast<std::int64_t>(j) * d + h * hd;
                                        if (gq)
                                            for (int c = 0; c < hd; ++c) gq->data()[qoff + c] += gv * tk[koff + c];
                                        if (gk)
                                            for (int c = 0; c < hd; ++c) gk->data()[koff + c] += gv * tq[qoff + c];
                                    }
                            }
                    });
    return {&g, id};
}

Value attn_map(Value scores, AttnKind kind) {
    Graph& g = *scores.graph;
    const Tensor& tz = scores.val();
    check_square_tail(tz, "attn_map");
    int n_con = tz.dim(tz.rank() - 1);
    std::int64_t n_mats = tz.size() / (n_con * n_con);
    Tensor out(tz.shape());
    map_causal_rows(tz.data(), out.data(), n_mats, n_con, kind);

    const char* name = kind == AttnKind::dpa ? "attn_dpa" : "attn_ea";
    int id = g.emit(name, {scores.id}, std::move(out),
                    [zi = scores.id, n_mats, n_con, kind](Graph& gg, int self) {
                        Tensor* gz = gg.grad_accumulator(zi);
                        if (!gz) return;
                        const double* gout = gg.grad(self).data();
                        const double* a = gg.value(self).data();
                        const double* z = gg.value(zi).data();
                        for (std::int64_t m = 0; m < n_mats; ++m) {
                            std::int64_t base = m * n_con * n_con;
                            for (int i = 0; i < n_con; ++i) {
                                std::int64_t row = base + static_cast<std::int64_t>(i) * n_con;
                                const double* gr = gout + row;
                                const double* ar = a + row;
                                int len = i + 1;
                                double dot = 0.0;
                                for (int j = 0; j < len; ++j) dot += gr[j] * ar[j];
                                double* gzr = gz->data() + row;
                                if (kind == AttnKind::dpa) {
                                    for (int j = 0; j < len; ++j) gzr[j] += ar[j] * (gr[j] - dot);
                                } else {
                                    const double* zr = z + row;
                                    double s = 0.0;
                                    for (int j = 0; j < len; ++j) s += ea_weight(zr[j]);
                                    // Uniform fallback rows are locally constant in z.
                                    if (s < kEaFallbackEps) continue;
                                    for (int j = 0; j < len; ++j) {
                                        double denom = 1.0 + zr[j] * zr[j];
                                        double dwdz = 2.0 * zr[j] / (denom * denom);
                                        gzr[j] += (gr[j] - dot) / s * dwdz;
                                    }
                                }
                            }
                        }
                    });
    return {&g, id};
}

Value attn_apply(Value attn, Value v, int n_heads) {
    Graph& g = *attn.graph;
    const Tensor& ta = attn.val();
    const Tensor& tv = v.val();
    if (ta.rank() != 4 || tv.rank() != 3 || ta.dim(0) != tv.dim(0) || ta.dim(1) != n_heads ||
        ta.dim(2) != tv.dim(1) || ta.dim(3) != tv.dim(1) || tv.dim(2) % n_heads != 0)
        throw std::invalid_argument("attn_apply: incompatible shapes " + ta.shape_str() + " and " + tv.shape_str());
    int batch = tv.dim(0), n_con = tv.dim(1), d = tv.dim(2);
    int hd = d / n_heads;
    std::int64_t sample = static_cast<std::int64_t>(n_con) * d;
    std::int64_t mat = static_cast<std::int64_t>(n_con) * n_con;

    Tensor out({batch, n_con, d});
    for (int b = 0; b < batch; ++b)
        for (int h = 0; h < n_heads; ++h) {
            const double* am = ta.data() + (static_cast<std::int64_t>(b) * n_heads + h) * mat;
            for (int i = 0; i < n_con; ++i) {
                double* orow = out.data() + b * sample + static_cast<std::int64_t>(i) * d + h * hd;
                for (int j = 0; j <= i; ++j) {
                    double w = am[static_cast<std::int64_t>(i) * n_con + j];
                    if (w == 0.0) continue;
                    const double* vrow = tv.data() + b * sample + static_cast<std::int64_t>(j) * d + h * hd;
                    for (int c = 0; c < hd; ++c) orow[c] += w * vrow[c];
                }
            }
        }

    int id = g.emit("attn_apply", {attn.id, v.id}, std::move(out),
                    [ai = attn.id, vi = v.id, batch, n_heads, n_con, d, hd, sample, mat](Graph& gg, int self) {
                        Tensor* ga = gg.grad_accumulator(ai);
                        Tensor* gv = gg.grad_accumulator(vi);
                        if (!ga && !gv) return;
                        const double* gout = gg.grad(self).data();
                        const double* ta = gg.value(ai).data();
                        const double* tv = gg.value(vi).data();
                        for (int b = 0; b < batch; ++b)
                            for (int h = 0; h < n_heads; ++h) {
                                std::int64_t mbase = (static_cast<std::int64_t>(b) * n_heads + h) * mat;
                                for (int i = 0; i < n_con; ++i) {
                                    const double* grow = gout + b * sample + static_cast<std::int64_t>(i) * d + h * hd;
                                    for (int j = 0; j <= i; ++j) {
                                        const double* vrow = tv + b * sample + static_cast<std::int64_t>(j) * d + h * hd;
                                        if (ga) {
                                            double acc = 0.0;
                                            for (int c = 0; c < hd; ++c) acc += grow[c] * vrow[c];
                                            ga->data()[mbase + static_cast<std::int64_t>(i) * n_con + j] += acc;
                                        }
                                        if (gv) {
                                            double w = ta[mbase + static_cast<std::int64_t>(i) * n_con + j];
                                            if (w == 0.0) continue;
                                            double* gvrow = gv->data() + b * sample + static_cast<std::int64_t>(j) * d + h * hd;
                                            for (int c = 0; c < hd; ++c) gvrow[c] += w * grow[c];
                                        }
                                    }
                                }
                            }
                    });
    return {&g, id};
}

}  // namespace iarc
