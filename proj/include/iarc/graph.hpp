// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "iarc/tensor.hpp"

namespace iarc {

class Graph;

// Lightweight handle to a node in a Graph. Ops are eager: building a node
// computes its forward value immediately.
struct Value {
    Graph* graph = nullptr;
    int id = -1;

    const Tensor& val() const;
    const std::vector<int>& shape() const;
};

// Reverse-mode tape. Nodes are appended in topological order (inputs always
// precede consumers), so backward is a single reverse sweep that visits each
// node exactly once.
class Graph {
   public:
    using BackFn = std::function<void(Graph&, int)>;

    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    // Leaf that does not need gradients (network inputs).
    Value input(Tensor t);
    // Borrowing leaf over an externally owned parameter tensor. Gradients are
    // collected per registration order and read back via param_grad().
    Value param(Tensor& t);
    // Owned leaf without gradients (masks, fixed tables).
    Value constant(Tensor t);

    // Reverse sweep from a scalar loss. Gradients of non-param nodes are
    // released as soon as they have been consumed unless keep_grads is set.
    void backward(Value loss, bool keep_grads = false);

    const Tensor& value(int id) const { return nodes_[static_cast<std::size_t>(id)].val(); }
    bool has_grad(int id) const { return nodes_[static_cast<std::size_t>(id)].has_grad; }
    const Tensor& grad(int id) const;

    int n_params() const { return static_cast<int>(param_ids_.size()); }
    // Gradient for the i-th registered param; all-zeros if it did not
    // contribute to the loss. Valid after backward().
    const Tensor& param_grad(int i);
    // External tensor backing the i-th registered param.
    const Tensor* param_tensor(int i) const;

    std::size_t n_nodes() const { return nodes_.size(); }

    // --- builder API (used by the op free functions) ---
    int emit(const char* op, std::vector<int> inputs, Tensor value, BackFn back);
    // Accumulation buffer for a node's gradient; nullptr when the node does
    // not require gradients. Allocated zeroed on first request.
    Tensor* grad_accumulator(int id);
    bool requires_grad(int id) const { return nodes_[static_cast<std::size_t>(id)].requires_grad; }
    const char* op_name(int id) const { return nodes_[static_cast<std::size_t>(id)].op; }

   private:
    struct Node {
        const Tensor* external = nullptr;  // set for param leaves
        Tensor value;
        Tensor grad;
        bool requires_grad = false;
        bool has_grad = false;
        bool is_param = false;
        std::vector<int> inputs;
        BackFn back;
        const char* op = "";

        const Tensor& val() const { return external ? *external : value; }
    };

    std::vector<Node> nodes_;
    std::vector<int> param_ids_;
};

inline const Tensor& Value::val() const { return graph->value(id); }
inline const std::vector<int>& Value::shape() const { return graph->value(id).shape(); }

// ---- ops ----
// Elementwise add; the trailing dims of b may be a suffix of a's shape, in
// which case b is broadcast over the leading dims (bias add).
Value add(Value a, Value b);
Value mul(Value a, Value b);  // elementwise, same shape
Value scale(Value a, double c);
// a: (..., m, k) with leading dims collapsed to rows; b: (k, n).
Value matmul(Value a, Value b);
// x: (B, T, k), w: (T, k, n); independent matrix per position t.
Value matmul_per_pos(Value x, Value w);
Value relu(Value x);
Value sigmoid(Value x);
Value tanh_op(Value x);
Value square(Value x);
Value recip1p(Value x);  // 1 / (1 + x)
// Softmax over the last dim of every row.
Value row_softmax(Value x);
// Parameter-free RMS normalization over the last dim: x / sqrt(mean(x^2) + eps).
Value rms_norm(Value x);
Value reshape(Value x, std::vector<int> shape);
Value concat_last(Value a, Value b);
Value slice_last(Value x, int start, int len);
Value select_time(Value x, int t);             // (B, T, d) -> (B, d)
Value stack_time(std::span<const Value> xs);   // T x (B, d) -> (B, T, d)
Value sum_all(Value x);
// Mean cross entropy over all rows; logits (..., C) against integer class ids.
Value cross_entropy_logits(Value logits, std::span<const int> targets);

constexpr double kRmsNormEps = 1e-8;

}  // namespace iarc
