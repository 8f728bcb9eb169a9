// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "iarc/attention.hpp"
#include "iarc/gradcheck.hpp"
#include "iarc/rng.hpp"

using namespace iarc;

TEST_CASE("config defaults") {
    AttentionConfig cfg = AttentionConfig::make(AttnKind::dpa, 20, 4);
    CHECK(cfg.head_dim == 5);
    CHECK(cfg.beta == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    REQUIRE(cfg.alibi_slopes.size() == 4);
    CHECK(cfg.alibi_slopes[0] == 0.25);
    CHECK(cfg.alibi_slopes[1] == 0.0625);
    CHECK(cfg.alibi_slopes[2] == std::pow(2.0, -6));
    CHECK(cfg.alibi_slopes[3] == std::pow(2.0, -8));
    CHECK_THROWS(AttentionConfig::make(AttnKind::dpa, 21, 4));

    CHECK(attn_kind_from_name("dpa") == AttnKind::dpa);
    CHECK(attn_kind_from_name("ea") == AttnKind::ea);
    CHECK_THROWS(attn_kind_from_name("softmax"));
    CHECK(std::string(attn_kind_name(AttnKind::ea)) == "ea");
}

TEST_CASE("score values on the causal triangle") {
    AttentionConfig cfg = AttentionConfig::make(AttnKind::dpa, 2, 1);
    double beta = cfg.beta;
    double slope = cfg.alibi_slopes[0];
    // One head, two positions, unit-ish vectors.
    Tensor q({1, 2, 2}, {1, 0, 0, 1});
    Tensor k({1, 2, 2}, {2, 0, 0, 3});
    Tensor z = attention_scores(q, k, cfg);
    REQUIRE(z.shape() == std::vector<int>{1, 2, 2});
    CHECK(z.data()[0] == doctest::Approx(2.0 * beta).epsilon(1e-15));       // z00
    CHECK(z.data()[1] == 0.0);                                             // above diagonal
    CHECK(z.data()[2] == doctest::Approx(-slope).epsilon(1e-15));          // z10: dot 0, distance 1
    CHECK(z.data()[3] == doctest::Approx(3.0 * beta).epsilon(1e-15));      // z11
}

TEST_CASE("softmax map on known rows") {
    Tensor z({1, 2, 2}, {7.0, 0.0, 0.0, std::log(3.0)});
    Tensor a = dpa(z);
    CHECK(a.data()[0] == 1.0);  // single-entry row
    CHECK(a.data()[1] == 0.0);
    CHECK(a.data()[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(a.data()[3] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("expressive map on known rows") {
    CHECK(ea_weight(1.0) == 0.5);
    CHECK(ea_weight(3.0) == 0.9);
    Tensor z({1, 2, 2}, {-4.0, 0.0, 1.0, 3.0});
    Tensor a = ea(z);
    CHECK(a.data()[0] == 1.0);  // single entry normalizes to one
    CHECK(a.data()[2] == doctest::Approx(0.5 / 1.4).epsilon(1e-14));
    CHECK(a.data()[3] == doctest::Approx(0.9 / 1.4).epsilon(1e-14));
}

TEST_CASE("expressive map is even in the scores") {
    auto rng = make_rng(31);
    Tensor z = Tensor::zeros({2, 5, 5});
    for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j <= i; ++j) {
                std::uniform_real_distribution<double> u(-3.0, 3.0);
                z.data()[(m * 5 + i) * 5 + j] = u(rng);
            }
    Tensor zneg = z;
    for (std::int64_t k = 0; k < zneg.size(); ++k) zneg.data()[k] = -zneg.data()[k];
    CHECK(ea(z).flat() == ea(zneg).flat());
}

TEST_CASE("softmax map is shift invariant per row") {
    auto rng = make_rng(32);
    Tensor z = Tensor::uniform({1, 4, 4}, -2, 2, rng);
    Tensor zs = z;
    for (std::int64_t k = 0; k < zs.size(); ++k) zs.data()[k] += 17.5;
    Tensor a = dpa(z);
    Tensor b = dpa(zs);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j <= i; ++j)
            CHECK(a.data()[i * 4 + j] == doctest::Approx(b.data()[i * 4 + j]).epsilon(1e-12));
}

TEST_CASE("both maps give causal probability rows") {
    auto rng = make_rng(33);
    Tensor z = Tensor::uniform({3, 6, 6}, -3, 3, rng);
    for (const Tensor& a : {dpa(z), ea(z)}) {
        for (int m = 0; m < 3; ++m)
            for (int i = 0; i < 6; ++i) {
                double sum = 0.0;
                for (int j = 0; j < 6; ++j) {
                    double v = a.data()[(m * 6 + i) * 6 + j];
                    if (j > i) {
                        CHECK(v == 0.0);
                    } else {
                        CHECK(v >= 0.0);
                        sum += v;
                    }
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
    }
}

TEST_CASE("expressive map falls back to uniform on dead rows") {
    Tensor z = Tensor::zeros({1, 3, 3});
    z.data()[3] = 1.0;  // row 1: [1, 0] -> no fallback
    Tensor a = ea(z);
    CHECK(a.data()[0] == 1.0);
    CHECK(a.data()[3] == 1.0);  // w = [0.5, 0]
    CHECK(a.data()[4] == 0.0);
    for (int j = 0; j < 3; ++j)
        CHECK(a.data()[6 + j] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));  // dead row 2
}

TEST_CASE("graph scores agree bitwise with the single-sample form") {
    auto rng = make_rng(34);
    const int T = 5, heads = 2, hd = 3, d = heads * hd;
    AttentionConfig cfg = AttentionConfig::make(AttnKind::dpa, d, heads);
    Tensor q = Tensor::uniform({1, T, d}, -1, 1, rng);
    Tensor k = Tensor::uniform({1, T, d}, -1, 1, rng);

    Graph g;
    Tensor zg = attn_scores(g.input(q), g.input(k), cfg).val();
    REQUIRE(zg.shape() == std::vector<int>{1, heads, T, T});

    // Re-pack (B=1, T, d) into the per-head (heads, T, head_dim) layout.
    Tensor qh = Tensor::zeros({heads, T, hd});
    Tensor kh = Tensor::zeros({heads, T, hd});
    for (int h = 0; h < heads; ++h)
        for (int t = 0; t < T; ++t)
            for (int c = 0; c < hd; ++c) {
                qh.data()[(h * T + t) * hd + c] = q.data()[t * d + h * hd + c];
                kh.data()[(h * T + t) * hd + c] = k.data()[t * d + h * hd + c];
            }
    Tensor zf = attention_scores(qh, kh, cfg);
    CHECK(zg.flat() == zf.flat());

    // And the maps agree bitwise on those scores.
    Graph g2;
    CHECK(attn_map(g2.input(zg), AttnKind::dpa).val().flat() == dpa(zf).flat());
    CHECK(attn_map(g2.input(zg), AttnKind::ea).val().flat() == ea(zf).flat());
}

TEST_CASE("attention apply with crafted weight matrices") {
    const int T = 3, heads = 2, hd = 2, d = 4;
    Tensor v({1, T, d}, {1, 2, 10, 20,
                         3, 4, 30, 40,
                         5, 6, 50, 60});
    // Head 0: identity attention. Head 1: uniform over the causal prefix.
    Tensor a = Tensor::zeros({1, heads, T, T});
    for (int i = 0; i < T; ++i) a.data()[i * T + i] = 1.0;
    for (int i = 0; i < T; ++i)
        for (int j = 0; j <= i; ++j) a.data()[(T + i) * T + j] = 1.0 / (i + 1);

    Graph g;
    Tensor out = attn_apply(g.input(a), g.input(v), heads).val();
    REQUIRE(out.shape() == std::vector<int>{1, T, d});
    // Head 0 columns: copied rows.
    CHECK(out.data()[0 * d + 0] == 1.0);
    CHECK(out.data()[1 * d + 1] == 4.0);
    CHECK(out.data()[2 * d + 0] == 5.0);
    // Head 1 columns: running means of v columns 2,3.
    CHECK(out.data()[0 * d + 2] == 10.0);
    CHECK(out.data()[1 * d + 2] == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(out.data()[2 * d + 3] == doctest::Approx(40.0).epsilon(1e-15));
}

TEST_CASE("attention output is causal") {
    auto rng = make_rng(35);
    const int T = 6, heads = 2, d = 6;
    for (AttnKind kind : {AttnKind::dpa, AttnKind::ea}) {
        AttentionConfig cfg = AttentionConfig::make(kind, d, heads);
        Tensor q = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor k = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor v = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor k2 = k, v2 = v, q2 = q;
        // Perturb everything from position 4 onward.
        for (int b = 0; b < 2; ++b)
            for (int t = 4; t < T; ++t)
                for (int c = 0; c < d; ++c) {
                    k2.data()[(b * T + t) * d + c] += 0.7;
                    v2.data()[(b * T + t) * d + c] -= 1.3;
                    q2.data()[(b * T + t) * d + c] += 0.2;
                }
        auto run = [&](const Tensor& qq, const Tensor& kk, const Tensor& vv) {
            Graph g;
            Value z = attn_scores(g.input(qq), g.input(kk), cfg);
            return attn_apply(attn_map(z, kind), g.input(vv), heads).val();
        };
        Tensor o1 = run(q, k, v);
        Tensor o2 = run(q2, k2, v2);
        for (int b = 0; b < 2; ++b)
            for (int t = 0; t < 4; ++t)
                for (int c = 0; c < d; ++c)
                    CHECK(o1.data()[(b * T + t) * d + c] == o2.data()[(b * T + t) * d + c]);
    }
}

TEST_CASE("finite differences through the attention stack") {
    auto rng = make_rng(36);
    const int T = 4, heads = 2, d = 4;
    for (AttnKind kind : {AttnKind::dpa, AttnKind::ea}) {
        CAPTURE(attn_kind_name(kind));
        AttentionConfig cfg = AttentionConfig::make(kind, d, heads);
        Tensor q = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor k = Tensor::uniform({2, T, d}, -1, 1, rng);
        Tensor v = Tensor::uniform({2, T, d}, -1, 1, rng);
        auto build = [&](Graph& g) {
            Value z = attn_scores(g.param(q), g.param(k), cfg);
            Value out = attn_apply(attn_map(z, kind), g.param(v), heads);
            return sum_all(square(out));
        };
        auto res = grad_check(build, {&q, &k, &v}, 20, 40 + static_cast<int>(kind));
        CHECK(res.checked == 60);
        CHECK(res.max_rel_err < 1e-6);
    }
}

TEST_CASE("dead expressive rows carry no gradient") {
    Tensor z = Tensor::zeros({1, 1, 3, 3});
    z.data()[3] = 1.2;  // row 1 alive
    z.data()[4] = -0.5;
    auto rng = make_rng(37);
    Tensor c = Tensor::uniform({1, 1, 3, 3}, 1, 2, rng);

    Graph g;
    Value vz = g.param(z);
    Value a = attn_map(vz, AttnKind::ea);
    g.backward(sum_all(mul(a, g.constant(c))));
    const Tensor& gz = g.param_grad(0);
    // Row 0 is a single entry (a == 1 regardless), row 2 is dead: both zero.
    for (int j = 0; j < 3; ++j) {
        CHECK(gz.data()[0 * 3 + j] == 0.0);
        CHECK(gz.data()[2 * 3 + j] == 0.0);
    }
    bool row1_has_grad = false;
    for (int j = 0; j < 2; ++j)
        if (gz.data()[1 * 3 + j] != 0.0) row1_has_grad = true;
    CHECK(row1_has_grad);
}
