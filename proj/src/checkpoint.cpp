// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace iarc {
namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("truncated checkpoint");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated checkpoint");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_checkpoint(const std::vector<Tensor*>& tensors, std::ostream& os) {
    put_u32(os, static_cast<std::uint32_t>(tensors.size()));
    for (const Tensor* t : tensors) {
        put_u32(os, static_cast<std::uint32_t>(t->rank()));
        for (int i = 0; i < t->rank(); ++i) put_u32(os, static_cast<std::uint32_t>(t->dim(i)));
        for (std::int64_t k = 0; k < t->size(); ++k) put_f64(os, t->data()[k]);
    }
    if (!os) throw std::runtime_error("checkpoint write failed");
}

void save_checkpoint(const std::vector<Tensor*>& tensors, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    save_checkpoint(tensors, os);
}

void load_checkpoint(const std::vector<Tensor*>& tensors, std::istream& is) {
    std::uint32_t count = get_u32(is);
    if (count != tensors.size())
        throw std::runtime_error("checkpoint holds " + std::to_string(count) + " tensors, expected " +
                                 std::to_string(tensors.size()));
    for (Tensor* t : tensors) {
        std::uint32_t rank = get_u32(is);
        std::vector<int> dims(rank);
        for (std::uint32_t i = 0; i < rank; ++i) dims[i] = static_cast<int>(get_u32(is));
        if (dims != t->shape())
            throw std::runtime_error("checkpoint tensor shape " + shape_to_string(dims) +
                                     " does not match " + t->shape_str());
        for (std::int64_t k = 0; k < t->size(); ++k) t->data()[k] = get_f64(is);
    }
}

void load_checkpoint(const std::vector<Tensor*>& tensors, const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
    load_checkpoint(tensors, is);
}

}  // namespace iarc
