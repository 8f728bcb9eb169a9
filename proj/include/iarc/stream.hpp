// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iarc/tensor.hpp"

namespace iarc {

// Control tokens in fixed slot order. I/A/R set the active task, C modifies
// it in a task-dependent way.
enum class ControlToken : int { I = 0, A = 1, R = 2, C = 3 };

char control_token_char(ControlToken t);
std::optional<ControlToken> control_token_from_char(char c);

// Task subset plus vocabulary/spacing parameters for stream generation.
struct TaskConfig {
    std::vector<ControlToken> tasks;  // active subset, kept in I,A,R,C order
    int n_symbols = 16;               // N: modulus and symbol vocabulary size
    int spacing_min = 3;
    int spacing_max = 9;
    std::uint64_t seed = 0;

    int n_control() const { return static_cast<int>(tasks.size()); }
    int embed_dim() const { return n_symbols + n_control(); }

    bool has_task(ControlToken t) const;
    // Slot of t within the active subset (tape one-hot position after the
    // N symbol slots); throws if t is not active.
    int tape_slot(ControlToken t) const;
    std::string tasks_str() const;  // e.g. "IARC"

    void validate() const;  // throws std::invalid_argument on bad config

    // Subset named by its letters (e.g. "IAR"), with N chosen so that
    // n_symbols + |tasks| == embed_dim. The paper's setups all use
    // embed_dim 20: N=16 for IARC, N=17 for IAR, N=18 for IA and IR.
    static TaskConfig standard(const std::string& tasks, int embed_dim = 20,
                               std::uint64_t seed = 0);
};

// Oracle state while walking a stream left to right.
struct OracleState {
    enum class Task { none, increment, addition, reverse };
    Task current = Task::none;
    int increment = 1;        // k; meaningful under increment only
    std::int64_t anchor = 0;  // mirror anchor; meaningful under reverse only

    // Applies a control token taped at position t. Throws on C before any
    // task has been established.
    void apply(ControlToken token, std::int64_t t);
};

// Next symbol x_{t+1} given the history x_0..x_t and the control token (if
// any) taped at position t. The taped token updates the state first, then
// the new state's rule produces the symbol.
//   increment: (x_t + k) mod N
//   addition:  (x_t + x_{t-1}) mod N, with x_{-1} taken as 0
//   reverse:   x_{2*anchor - t}, negative indices clamped to 0
int oracle_next(OracleState& state, const std::vector<int>& history, std::int64_t t,
                std::optional<ControlToken> taped, int n_symbols);

// Symbol sequence plus the aligned control tape.
struct TokenStream {
    std::vector<int> symbols;
    std::vector<std::optional<ControlToken>> tape;

    std::int64_t length() const { return static_cast<std::int64_t>(symbols.size()); }
};

// Stochastic stream: position 0 carries a task-setting control token (drawn
// from tasks minus C), later control positions advance by uniform gaps in
// [spacing_min, spacing_max] and draw uniformly from the full subset.
// Deterministic given config.seed.
TokenStream generate_stream(const TaskConfig& config, std::int64_t length);

// True iff replaying the oracle over (symbols, tape) reproduces symbols.
// Positions before the first control token are unconstrained.
bool validate_stream(const TokenStream& stream, const TaskConfig& config);

// One-hot encoded training windows. inputs: (batch, n_con, d) with the
// symbol one-hot in slots [0,N) and the tape one-hot in slots [N, N+S);
// tape slots are all zero at non-control positions. targets: next symbol
// at each window position.
struct EncodedBatch {
    Tensor inputs;             // (batch, n_con, d)
    std::vector<int> targets;  // batch * n_con, row-major

    int batch() const { return inputs.rank() == 3 ? inputs.dim(0) : 0; }
    int n_con() const { return inputs.rank() == 3 ? inputs.dim(1) : 0; }
    int dim() const { return inputs.rank() == 3 ? inputs.dim(2) : 0; }
};

// count random windows of length n_con; requires stream.length >= n_con+1.
EncodedBatch slice_windows(const TokenStream& stream, const TaskConfig& config, int n_con,
                           int count, std::mt19937_64& rng);

// Text dump: one line per position, "index<TAB>symbol<TAB>tape" with tape
// in {-, I, A, R, C}.
void dump_stream(const TokenStream& stream, std::ostream& os);
std::string dump_stream(const TokenStream& stream);
TokenStream parse_stream_dump(std::istream& is);

// Flat binary export of the encoded inputs: three 32-bit little-endian
// dimension words (batch, n_con, d) then float32 payload, row-major.
void write_encoded_batch(const EncodedBatch& batch, std::ostream& os);

}  // namespace iarc
