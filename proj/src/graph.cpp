// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace iarc {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Rows/cols split for ops that treat the last dim as the row payload.
std::pair<std::int64_t, int> rows_cols(const Tensor& t) {
    require(t.rank() >= 1, "op needs rank >= 1, got shape " + t.shape_str());
    int cols = t.dim(t.rank() - 1);
    std::int64_t rows = cols == 0 ? 0 : t.size() / cols;
    return {rows, cols};
}

// C[M,N] = A[M,K] * B[K,N]; ikj loop order, k-ascending accumulation per
// output element so that broadcast and per-position paths are bit-identical.
void mm_kernel(const double* a, const double* b, double* c, std::int64_t m, int k, int n) {
    for (std::int64_t i = 0; i < m; ++i) {
        double* ci = c + i * n;
        std::fill(ci, ci + n, 0.0);
        const double* ai = a + i * k;
        for (int kk = 0; kk < k; ++kk) {
            const double aik = ai[kk];
            if (aik == 0.0) continue;
            const double* bk = b + static_cast<std::int64_t>(kk) * n;
            for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

// dA += dC * B^T
void mm_grad_a(const double* dc, const double* b, double* da, std::int64_t m, int k, int n) {
    for (std::int64_t i = 0; i < m; ++i) {
        const double* dci = dc + i * n;
        double* dai = da + i * k;
        for (int kk = 0; kk < k; ++kk) {
            const double* bk = b + static_cast<std::int64_t>(kk) * n;
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += dci[j] * bk[j];
            dai[kk] += s;
        }
    }
}

// dB += A^T * dC
void mm_grad_b(const double* a, const double* dc, double* db, std::int64_t m, int k, int n) {
    for (std::int64_t i = 0; i < m; ++i) {
        const double* ai = a + i * k;
        const double* dci = dc + i * n;
        for (int kk = 0; kk < k; ++kk) {
            const double aik = ai[kk];
            if (aik == 0.0) continue;
            double* dbk = db + static_cast<std::int64_t>(kk) * n;
            for (int j = 0; j < n; ++j) dbk[j] += aik * dci[j];
        }
    }
}

}  // namespace

Value Graph::input(Tensor t) {
    Node n;
    n.value = std::move(t);
    n.op = "input";
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
}

Value Graph::param(Tensor& t) {
    Node n;
    n.external = &t;
    n.requires_grad = true;
    n.is_param = true;
    n.op = "param";
    nodes_.push_back(std::move(n));
    int id = static_cast<int>(nodes_.size()) - 1;
    param_ids_.push_back(id);
    return {this, id};
}

Value Graph::constant(Tensor t) {
    Node n;
    n.value = std::move(t);
    n.op = "constant";
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
}

int Graph::emit(const char* op, std::vector<int> inputs, Tensor value, BackFn back) {
    Node n;
    n.value = std::move(value);
    n.op = op;
    int id = static_cast<int>(nodes_.size());
    for (int in : inputs) {
        require(in >= 0 && in < id, std::string(op) + ": input id out of order");
        if (nodes_[static_cast<std::size_t>(in)].requires_grad) n.requires_grad = true;
    }
    n.inputs = std::move(inputs);
    if (n.requires_grad) n.back = std::move(back);
    nodes_.push_back(std::move(n));
    return id;
}

Tensor* Graph::grad_accumulator(int id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.requires_grad) return nullptr;
    if (!n.has_grad) {
        n.grad = Tensor::zeros(n.val().shape());
        n.has_grad = true;
    }
    return &n.grad;
}

const Tensor& Graph::grad(int id) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    require(n.has_grad, std::string("no gradient recorded for node ") + n.op);
    return n.grad;
}

const Tensor& Graph::param_grad(int i) {
    int id = param_ids_.at(static_cast<std::size_t>(i));
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.has_grad) {
        n.grad = Tensor::zeros(n.val().shape());
        n.has_grad = true;
    }
    return n.grad;
}

const Tensor* Graph::param_tensor(int i) const {
    int id = param_ids_.at(static_cast<std::size_t>(i));
    return nodes_[static_cast<std::size_t>(id)].external;
}

void Graph::backward(Value loss, bool keep_grads) {
    require(loss.graph == this, "backward: loss from another graph");
    Node& top = nodes_.at(static_cast<std::size_t>(loss.id));
    require(top.val().size() == 1,
            "backward needs a scalar loss, got shape " + top.val().shape_str());
    require(top.requires_grad, "backward: loss does not depend on any param");

    for (Node& n : nodes_) {
        n.has_grad = false;
        n.grad = Tensor();
    }
    top.grad = Tensor::scalar(1.0);
    top.has_grad = true;

    for (int id = loss.id; id >= 0; --id) {
        Node& n = nodes_[static_cast<std::size_t>(id)];
        if (!n.requires_grad || !n.has_grad) continue;
        if (n.back) n.back(*this, id);
        // A node's grad is complete once reached (all consumers have higher
        // ids); release it unless the caller wants to inspect.
        if (!keep_grads && !n.is_param && id != loss.id) {
            n.grad = Tensor();
            n.has_grad = false;
        }
    }
}

// ---------------------------------------------------------------------------
// ops

Value add(Value a, Value b) {
    Graph& g = *a.graph;
    const Tensor& ta = a.val();
    const Tensor& tb = b.val();
    const auto& sa = ta.shape();
    const auto& sb = tb.shape();
    bool suffix = sb.size() <= sa.size() &&
                  std::equal(sb.begin(), sb.end(), sa.end() - static_cast<long>(sb.size()));
    require(suffix, "add: shape mismatch " + ta.shape_str() + " vs " + tb.shape_str() +
                        " (second operand must match a trailing suffix)");
    const std::int64_t bs = tb.size();
    const std::int64_t reps = bs == 0 ? 0 : ta.size() / bs;

    Tensor out(sa);
    const double* pa = ta.data();
    const double* pb = tb.data();
    double* po = out.data();
    for (std::int64_t r = 0; r < reps; ++r)
        for (std::int64_t j = 0; j < bs; ++j) po[r * bs + j] = pa[r * bs + j] + pb[j];

    int id = g.emit("add", {a.id, b.id}, std::move(out),
                    [ai = a.id, bi = b.id, reps, bs](Graph& gg, int self) {
                        const double* gout = gg.grad(self).data();
                        if (Tensor* ga = gg.grad_accumulator(ai)) {
                            double* p = ga->data();
                            for (std::int64_t i = 0; i < reps * bs; ++i) p[i] += gout[i];
                        }
                        if (Tensor* gb = gg.grad_accumulator(bi)) {
                            double* p = gb->data();
                            for (std::int64_t r = 0; r < reps; ++r)
                                for (std::int64_t j = 0; j < bs; ++j) p[j] += gout[r * bs + j];
                        }
                    });
    return {&g, id};
}

Value mul(Value a, Value b) {
    Graph& g = *a.graph;
    const Tensor& ta = a.val();
    const Tensor& tb = b.val();
    Tensor::check_same_shape(ta, tb, "mul");
    Tensor out(ta.shape());
    const std::int64_t n = ta.size();
    for (std::int64_t i = 0; i < n; ++i) out.data()[i] = ta.data()[i] * tb.data()[i];

    int id = g.emit("mul", {a.id, b.id}, std::move(out),
                    [ai = a.id, bi = b.id, n](Graph& gg, int self) {
                        const double* gout = gg.grad(self).data();
                        const double* pa = gg.value(ai).data();
                        const double* pb = gg.value(bi).data();
                        if (Tensor* ga = gg.grad_accumulator(ai))
                            for (std::int64_t i = 0; i < n; ++i) ga->data()[i] += gout[i] * pb[i];
                        if (Tensor* gb = gg.grad_accumulator(bi))
                            for (std::int64_t i = 0; i < n; ++i) gb->data()[i] += gout[i] * pa[i];
                    });
    return {&g, id};
}

Value scale(Value a, double c) {
    Graph& g = *a.graph;
    const Tensor& ta = a.val();
    Tensor out(ta.shape());
    const std::int64_t n = ta.size();
    for (std::int64_t i = 0; i < n; ++i) out.data()[i] = c * ta.data()[i];
    int id = g.emit("scale", {a.id}, std::move(out), [ai = a.id, c, n](Graph& gg, int self) {
        const double* gout = gg.grad(self).data();
        if (Tensor* ga = gg.grad_accumulator(ai))
            for (std::int64_t i = 0; i < n; ++i) ga->data()[i] += c * gout[i];
    });
    return {&g, id};
}

Value matmul(Value a, Value b) {
    Graph& g = *a.graph;
    const Tensor& ta = a.val();
    const Tensor& tb = b.val();
    require(ta.rank() >= 2 && tb.rank() == 2,
            "matmul: need (..., m, k) x (k, n), got " + ta.shape_str() + " x " + tb.shape_str());
    const int k = ta.dim(ta.rank() - 1);
    require(k == tb.dim(0), "matmul: inner dim mismatch " + ta.shape_str() + " x " + tb.shape_str());
    const int n = tb.dim(1);
    const std::int64_t m = ta.size() / k;

    std::vector<int> out_shape = ta.shape();
    out_shape.back() = n;
    Tensor out(out_shape);
    mm_kernel(ta.data(), tb.data(), out.data(), m, k, n);

    int id = g.emit("matmul", {a.id, b.id}, std::move(out),
                    [ai = a.id, bi = b.id, m, k, n](Graph& gg, int self) {
                        const double* gout = gg.grad(self).data();
                        if (Tensor* ga = gg.grad_accumulator(ai))
                            mm_grad_a(gout, gg.value(bi).data(), ga->data(), m, k, n);
                        if (Tensor* gb = gg.grad_accumulator(bi))
                            mm_grad_b(gg.value(ai).data(), gout, gb->data(), m, k, n);
                    });
    return {&g, id};
}

Value matmul_per_pos(Value x, Value w) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    const Tensor& tw = w.val();
    require(tx.rank() == 3 && tw.rank() == 3,
            "matmul_per_pos: need (B,T,k) x (T,k,n), got " + tx.shape_str() + " x " + tw.shape_str());
    const int B = tx.dim(0), T = tx.dim(1), k = tx.dim(2);
    require(tw.dim(0) == T && tw.dim(1) == k,
            "matmul_per_pos: shape mismatch " + tx.shape_str() + " x " + tw.shape_str());
    const int n = tw.dim(2);

    Tensor out({B, T, n});
    // Gather rows of position t, multiply with w[t]; row loop inside matches
    // mm_kernel element-for-element.
    for (int t = 0; t < T; ++t) {
        const double* wt = tw.data() + static_cast<std::int64_t>(t) * k * n;
        for (int b = 0; b < B; ++b) {
            const double* xr = tx.data() + (static_cast<std::int64_t>(b) * T + t) * k;
            double* orow = out.data() + (static_cast<std::int64_t>(b) * T + t) * n;
            mm_kernel(xr, wt, orow, 1, k, n);
        }
    }

    int id = g.emit(
        "matmul_per_pos", {x.id, w.id}, std::move(out),
        [xi = x.id, wi = w.id, B, T, k, n](Graph& gg, int self) {
            const double* gout = gg.grad(self).data();
            const Tensor& tx2 = gg.value(xi);
            const Tensor& tw2 = gg.value(wi);
            Tensor* gx = gg.grad_accumulator(xi);
            Tensor* gw = gg.grad_accumulator(wi);
            for (int t = 0; t < T; ++t) {
                const double* wt = tw2.data() + static_cast<std::int64_t>(t) * k * n;
                double* gwt = gw ? gw->data() + static_cast<std::int64_t>(t) * k * n : nullptr;
                for (int b = 0; b < B; ++b) {
                    const std::int64_t row = static_cast<std::int64_t>(b) * T + t;
                    const double* grow = gout + row * n;
                    if (gx) mm_grad_a(grow, wt, gx->data() + row * k, 1, k, n);
                    if (gwt) mm_grad_b(tx2.data() + row * k, grow, gwt, 1, k, n);
                }
            }
        });
    return {&g, id};
}

namespace {

template <typename Fwd, typename Bwd>
Value unary_op(const char* name, Value x, Fwd fwd, Bwd bwd) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    Tensor out(tx.shape());
    const std::int64_t n = tx.size();
    for (std::int64_t i = 0; i < n; ++i) out.data()[i] = fwd(tx.data()[i]);
    int id = g.emit(name, {x.id}, std::move(out), [xi = x.id, n, bwd](Graph& gg, int self) {
        if (Tensor* gx = gg.grad_accumulator(xi)) {
            const double* gout = gg.grad(self).data();
            const double* px = gg.value(xi).data();
            const double* py = gg.value(self).data();
            for (std::int64_t i = 0; i < n; ++i) gx->data()[i] += gout[i] * bwd(px[i], py[i]);
        }
    });
    return {&g, id};
}

}  // namespace

Value relu(Value x) {
    return unary_op(
        "relu", x, [](double v) { return v > 0.0 ? v : 0.0; },
        [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Value sigmoid(Value x) {
    return unary_op(
        "sigmoid", x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
        [](double, double y) { return y * (1.0 - y); });
}

Value tanh_op(Value x) {
    return unary_op(
        "tanh", x, [](double v) { return std::tanh(v); },
        [](double, double y) { return 1.0 - y * y; });
}

Value square(Value x) {
    return unary_op(
        "square", x, [](double v) { return v * v; }, [](double v, double) { return 2.0 * v; });
}

Value recip1p(Value x) {
    return unary_op(
        "recip1p", x, [](double v) { return 1.0 / (1.0 + v); },
        [](double, double y) { return -y * y; });
}

Value row_softmax(Value x) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    auto [rows, cols] = rows_cols(tx);
    Tensor out(tx.shape());
    for (std::int64_t r = 0; r < rows; ++r) {
        const double* in = tx.data() + r * cols;
        double* o = out.data() + r * cols;
        double mx = in[0];
        for (int j = 1; j < cols; ++j) mx = std::max(mx, in[j]);
        double s = 0.0;
        for (int j = 0; j < cols; ++j) {
            o[j] = std::exp(in[j] - mx);
            s += o[j];
        }
        for (int j = 0; j < cols; ++j) o[j] /= s;
    }
    int id = g.emit("row_softmax", {x.id}, std::move(out),
                    [xi = x.id, rows, cols](Graph& gg, int self) {
                        if (Tensor* gx = gg.grad_accumulator(xi)) {
                            const double* gout = gg.grad(self).data();
                            const double* y = gg.value(self).data();
                            for (std::int64_t r = 0; r < rows; ++r) {
                                const double* yr = y + r * cols;
                                const double* gr = gout + r * cols;
                                double dot = 0.0;
                                for (int j = 0; j < cols; ++j) dot += gr[j] * yr[j];
                                double* gxr = gx->data() + r * cols;
                                for (int j = 0; j < cols; ++j) gxr[j] += yr[j] * (gr[j] - dot);
                            }
                        }
                    });
    return {&g, id};
}

Value rms_norm(Value x) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    auto [rows, cols] = rows_cols(tx);
    Tensor out(tx.shape());
    for (std::int64_t r = 0; r < rows; ++r) {
        const double* in = tx.data() + r * cols;
        double* o = out.data() + r * cols;
        double m = 0.0;
        for (int j = 0; j < cols; ++j) m += in[j] * in[j];
        const double s = 1.0 / std::sqrt(m / cols + kRmsNormEps);
        for (int j = 0; j < cols; ++j) o[j] = in[j] * s;
    }
    int id = g.emit(
        "rms_norm", {x.id}, std::move(out), [xi = x.id, rows, cols](Graph& gg, int self) {
            if (Tensor* gx = gg.grad_accumulator(xi)) {
                const double* gout = gg.grad(self).data();
                const double* px = gg.value(xi).data();
                for (std::int64_t r = 0; r < rows; ++r) {
                    const double* in = px + r * cols;
                    const double* gr = gout + r * cols;
                    double m = 0.0, dot = 0.0;
                    for (int j = 0; j < cols; ++j) m += in[j] * in[j];
                    for (int j = 0; j < cols; ++j) dot += gr[j] * in[j];
                    const double s = 1.0 / std::sqrt(m / cols + kRmsNormEps);
                    const double c = s * s * s * dot / cols;
                    double* gxr = gx->data() + r * cols;
                    for (int j = 0; j < cols; ++j) gxr[j] += gr[j] * s - c * in[j];
                }
            }
        });
    return {&g, id};
}

Value reshape(Value x, std::vector<int> shape) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    require(shape_numel(shape) == tx.size(),
            "reshape: size mismatch " + tx.shape_str() + " -> " + shape_to_string(shape));
    Tensor out(std::move(shape), std::vector<double>(tx.data(), tx.data() + tx.size()));
    int id = g.emit("reshape", {x.id}, std::move(out), [xi = x.id](Graph& gg, int self) {
        if (Tensor* gx = gg.grad_accumulator(xi)) {
            const Tensor& gout = gg.grad(self);
            for (std::int64_t i = 0; i < gout.size(); ++i) gx->data()[i] += gout.data()[i];
        }
    });
    return {&g, id};
}

Value concat_last(Value a, Value b) {
    Graph& g = *a.graph;
    const Tensor& ta = a.val();
    const Tensor& tb = b.val();
    require(ta.rank() == tb.rank() && ta.rank() >= 1, "concat_last: rank mismatch " +
                                                          ta.shape_str() + " vs " + tb.shape_str());
    for (int i = 0; i + 1 < ta.rank(); ++i)
        require(ta.dim(i) == tb.dim(i),
                "concat_last: shape mismatch " + ta.shape_str() + " vs " + tb.shape_str());
    const int ca = ta.dim(ta.rank() - 1), cb = tb.dim(tb.rank() - 1);
    auto [rows, colsa] = rows_cols(ta);
    (void)colsa;
    std::vector<int> shape = ta.shape();
    shape.back() = ca + cb;
    Tensor out(shape);
    for (std::int64_t r = 0; r < rows; ++r) {
        std::memcpy(out.data() + r * (ca + cb), ta.data() + r * ca, sizeof(double) * ca);
        std::memcpy(out.data() + r * (ca + cb) + ca, tb.data() + r * cb, sizeof(double) * cb);
    }
    int id = g.emit("concat_last", {a.id, b.id}, std::move(out),
                    [ai = a.id, bi = b.id, rows, ca, cb](Graph& gg, int self) {
                        const double* gout = gg.grad(self).data();
                        if (Tensor* ga = gg.grad_accumulator(ai))
                            for (std::int64_t r = 0; r < rows; ++r)
                                for (int j = 0; j < ca; ++j)
                                    ga->data()[r * ca + j] += gout[r * (ca + cb) + j];
                        if (Tensor* gb = gg.grad_accumulator(bi))
                            for (std::int64_t r = 0; r < rows; ++r)
                                for (int j = 0; j < cb; ++j)
                                    gb->data()[r * cb + j] += gout[r * (ca + cb) + ca + j];
                    });
    return {&g, id};
}

Value slice_last(Value x, int start, int len) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    auto [rows, cols] = rows_cols(tx);
    require(start >= 0 && len >= 0 && start + len <= cols,
            "slice_last: range [" + std::to_string(start) + ", " + std::to_string(start + len) +
                ") out of " + tx.shape_str());
    std::vector<int> shape = tx.shape();
    shape.back() = len;
    Tensor out(shape);
    for (std::int64_t r = 0; r < rows; ++r)
        std::memcpy(out.data() + r * len, tx.data() + r * cols + start, sizeof(double) * len);
    int id = g.emit("slice_last", {x.id}, std::move(out),
                    [xi = x.id, rows, cols, start, len](Graph& gg, int self) {
                        if (Tensor* gx = gg.grad_accumulator(xi)) {
                            const double* gout = gg.grad(self).data();
                            for (std::int64_t r = 0; r < rows; ++r)
                                for (int j = 0; j < len; ++j)
                                    gx->data()[r * cols + start + j] += gout[r * len + j];
                        }
                    });
    return {&g, id};
}

Value select_time(Value x, int t) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    require(tx.rank() == 3, "select_time: need (B,T,d), got " + tx.shape_str());
    const int B = tx.dim(0), T = tx.dim(1), d = tx.dim(2);
    require(t >= 0 && t < T, "select_time: t out of range");
    Tensor out({B, d});
    for (int b = 0; b < B; ++b)
        std::memcpy(out.data() + static_cast<std::int64_t>(b) * d,
                    tx.data() + (static_cast<std::int64_t>(b) * T + t) * d, sizeof(double) * d);
    int id = g.emit("select_time", {x.id}, std::move(out),
                    [xi = x.id, B, T, d, t](Graph& gg, int self) {
                        if (Tensor* gx = gg.grad_accumulator(xi)) {
                            const double* gout = gg.grad(self).data();
                            for (int b = 0; b < B; ++b)
                                for (int j = 0; j < d; ++j)
                                    gx->data()[(static_cast<std::int64_t>(b) * T + t) * d + j] +=
                                        gout[static_cast<std::int64_t>(b) * d + j];
                        }
                    });
    return {&g, id};
}

Value stack_time(std::span<const Value> xs) {
    require(!xs.empty(), "stack_time: empty input");
    Graph& g = *xs[0].graph;
    const Tensor& t0 = xs[0].val();
    require(t0.rank() == 2, "stack_time: need (B,d) slices, got " + t0.shape_str());
    const int B = t0.dim(0), d = t0.dim(1);
    const int T = static_cast<int>(xs.size());
    std::vector<int> ids;
    ids.reserve(xs.size());
    Tensor out({B, T, d});
    for (int t = 0; t < T; ++t) {
        Tensor::check_same_shape(xs[static_cast<std::size_t>(t)].val(), t0, "stack_time");
        ids.push_back(xs[static_cast<std::size_t>(t)].id);
        const double* src = xs[static_cast<std::size_t>(t)].val().data();
        for (int b = 0; b < B; ++b)
            std::memcpy(out.data() + (static_cast<std::int64_t>(b) * T + t) * d,
                        src + static_cast<std::int64_t>(b) * d, sizeof(double) * d);
    }
    int id = g.emit("stack_time", ids, std::move(out), [ids, B, T, d](Graph& gg, int self) {
        const double* gout = gg.grad(self).data();
        for (int t = 0; t < T; ++t) {
            if (Tensor* gx = gg.grad_accumulator(ids[static_cast<std::size_t>(t)])) {
                for (int b = 0; b < B; ++b)
                    for (int j = 0; j < d; ++j)
                        gx->data()[static_cast<std::int64_t>(b) * d + j] +=
                            gout[(static_cast<std::int64_t>(b) * T + t) * d + j];
            }
        }
    });
    return {&g, id};
}

Value sum_all(Value x) {
    Graph& g = *x.graph;
    const Tensor& tx = x.val();
    double s = 0.0;
    for (std::int64_t i = 0; i < tx.size(); ++i) s += tx.data()[i];
    int id = g.emit("sum_all", {x.id}, Tensor::scalar(s), [xi = x.id](Graph& gg, int self) {
        if (Tensor* gx = gg.grad_accumulator(xi)) {
            const double go = gg.grad(self).item();
            for (std::int64_t i = 0; i < gx->size(); ++i) gx->data()[i] += go;
        }
    });
    return {&g, id};
}

Value cross_entropy_logits(Value logits, std::span<const int> targets) {
    Graph& g = *logits.graph;
    const Tensor& tl = logits.val();
    auto [rows, cols] = rows_cols(tl);
    require(static_cast<std::int64_t>(targets.size()) == rows,
            "cross_entropy_logits: " + std::to_string(targets.size()) + " targets for " +
                std::to_string(rows) + " rows of " + tl.shape_str());
    for (int t : targets)
        require(t >= 0 && t < cols, "cross_entropy_logits: target id " + std::to_string(t) +
                                        " outside [0, " + std::to_string(cols) + ")");
    std::vector<int> tgt(targets.begin(), targets.end());

    double loss = 0.0;
    for (std::int64_t r = 0; r < rows; ++r) {
        const double* z = tl.data() + r * cols;
        double mx = z[0];
        for (int j = 1; j < cols; ++j) mx = std::max(mx, z[j]);
        double s = 0.0;
        for (int j = 0; j < cols; ++j) s += std::exp(z[j] - mx);
        loss += mx + std::log(s) - z[tgt[static_cast<std::size_t>(r)]];
    }
    loss /= static_cast<double>(rows);

    int id = g.emit("cross_entropy", {logits.id}, Tensor::scalar(loss),
                    [li = logits.id, tgt = std::move(tgt), rows, cols](Graph& gg, int self) {
                        if (Tensor* gl = gg.grad_accumulator(li)) {
                            const double go = gg.grad(self).item() / static_cast<double>(rows);
                            const double* z0 = gg.value(li).data();
                            for (std::int64_t r = 0; r < rows; ++r) {
                                const double* z = z0 + r * cols;
                                double* gr = gl->data() + r * cols;
                                double mx = z[0];
                                for (int j = 1; j < cols; ++j) mx = std::max(mx, z[j]);
                                double s = 0.0;
                                for (int j = 0; j < cols; ++j) s += std::exp(z[j] - mx);
                                for (int j = 0; j < cols; ++j)
                                    gr[j] += go * std::exp(z[j] - mx) / s;
                                gr[tgt[static_cast<std::size_t>(r)]] -= go;
                            }
                        }
                    });
    return {&g, id};
}

}  // namespace iarc
