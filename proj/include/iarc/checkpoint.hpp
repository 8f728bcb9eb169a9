// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iarc/tensor.hpp"

namespace iarc {

// Flat binary parameter snapshot, little-endian: a 32-bit tensor count, then
// per tensor a 32-bit rank, the dims as 32-bit words, and the payload as
// 64-bit floats in row-major order.
void save_checkpoint(const std::vector<Tensor*>& tensors, std::ostream& os);
void save_checkpoint(const std::vector<Tensor*>& tensors, const std::string& path);

// Fills the given tensors in order; count and every shape must match.
void load_checkpoint(const std::vector<Tensor*>& tensors, std::istream& is);
void load_checkpoint(const std::vector<Tensor*>& tensors, const std::string& path);

}  // namespace iarc
