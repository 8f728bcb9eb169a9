// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace iarc {

std::int64_t shape_numel(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int d : shape) {
        if (d < 0) throw std::invalid_argument("negative dimension in shape " + shape_to_string(shape));
        n *= d;
    }
    return n;
}

std::string shape_to_string(const std::vector<int>& shape) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ", ";
        os << shape[i];
    }
    os << ")";
    return os.str();
}

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<std::size_t>(shape_numel(shape_)), 0.0);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_numel(shape_) != static_cast<std::int64_t>(data_.size())) {
        throw std::invalid_argument("tensor data length " + std::to_string(data_.size()) +
                                    " does not match shape " + shape_to_string(shape_));
    }
}

Tensor Tensor::full(std::vector<int> shape, double v) {
    Tensor t(std::move(shape));
    t.fill(v);
    return t;
}

Tensor Tensor::uniform(std::vector<int> shape, double lo, double hi, std::mt19937_64& rng) {
    Tensor t(std::move(shape));
    std::uniform_real_distribution<double> dist(lo, hi);
    for (double& v : t.data_) v = dist(rng);
    return t;
}

double Tensor::item() const {
    if (data_.size() != 1) {
        throw std::invalid_argument("item() on tensor of shape " + shape_str());
    }
    return data_[0];
}

void Tensor::fill(double v) {
    for (double& x : data_) x = v;
}

std::string Tensor::shape_str() const { return shape_to_string(shape_); }

void Tensor::check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_str() +
                                    " vs " + b.shape_str());
    }
}

}  // namespace iarc
