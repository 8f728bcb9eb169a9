// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace iarc {

// splitmix64 finalizer; used to derive independent sub-seeds from one base
// seed so that e.g. per-epoch data streams do not depend on draw order.
inline std::uint64_t mix_bits(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_bits(mix_bits(base) ^ mix_bits(stream + 0x51ed2701ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix_bits(seed));
}

}  // namespace iarc
