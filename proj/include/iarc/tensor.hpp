// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace iarc {

// Dense row-major tensor of 64-bit floats. Plain value type: copies are
// deep, no views, no aliasing through the public interface.
class Tensor {
   public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape);
    Tensor(std::vector<int> shape, std::vector<double> data);

    static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
    static Tensor scalar(double v) { return Tensor({1}, {v}); }
    static Tensor full(std::vector<int> shape, double v);
    // Uniform in [lo, hi); one rng draw per element in row-major order.
    static Tensor uniform(std::vector<int> shape, double lo, double hi, std::mt19937_64& rng);

    const std::vector<int>& shape() const { return shape_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& flat() const { return data_; }

    double item() const;  // value of a one-element tensor

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    void fill(double v);

    std::string shape_str() const;  // "(2, 3, 4)" for error messages

    // Throws std::invalid_argument mentioning both shapes.
    static void check_same_shape(const Tensor& a, const Tensor& b, const char* op);

   private:
    std::vector<int> shape_;
    std::vector<double> data_;
};

std::int64_t shape_numel(const std::vector<int>& shape);
std::string shape_to_string(const std::vector<int>& shape);

}  // namespace iarc
