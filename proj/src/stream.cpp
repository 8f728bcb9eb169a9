// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/stream.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "iarc/rng.hpp"

namespace iarc {

namespace {
constexpr ControlToken kAllTokens[] = {ControlToken::I, ControlToken::A, ControlToken::R,
                                       ControlToken::C};
}

char control_token_char(ControlToken t) {
    switch (t) {
        case ControlToken::I: return 'I';
        case ControlToken::A: return 'A';
        case ControlToken::R: return 'R';
        case ControlToken::C: return 'C';
    }
    return '?';
}

std::optional<ControlToken> control_token_from_char(char c) {
    switch (c) {
        case 'I': return ControlToken::I;
        case 'A': return ControlToken::A;
        case 'R': return ControlToken::R;
        case 'C': return ControlToken::C;
        default: return std::nullopt;
    }
}

bool TaskConfig::has_task(ControlToken t) const {
    return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
}

int TaskConfig::tape_slot(ControlToken t) const {
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (tasks[i] == t) return static_cast<int>(i);
    throw std::invalid_argument(std::string("control token ") + control_token_char(t) +
                                " not in task subset " + tasks_str());
}

std::string TaskConfig::tasks_str() const {
    std::string s;
    for (ControlToken t : tasks) s += control_token_char(t);
    return s;
}

void TaskConfig::validate() const {
    if (tasks.empty()) throw std::invalid_argument("task subset is empty");
    for (std::size_t i = 1; i < tasks.size(); ++i)
        if (static_cast<int>(tasks[i]) <= static_cast<int>(tasks[i - 1]))
            throw std::invalid_argument("task subset must be in I,A,R,C order without repeats");
    bool has_setter = has_task(ControlToken::I) || has_task(ControlToken::A) ||
                      has_task(ControlToken::R);
    if (!has_setter)
        throw std::invalid_argument("task subset " + tasks_str() + " has no task-setting token");
    if (n_symbols < 2) throw std::invalid_argument("n_symbols must be >= 2");
    if (spacing_min < 1 || spacing_max < spacing_min)
        throw std::invalid_argument("need 1 <= spacing_min <= spacing_max, got [" +
                                    std::to_string(spacing_min) + ", " +
                                    std::to_string(spacing_max) + "]");
}

TaskConfig TaskConfig::standard(const std::string& tasks, int embed_dim, std::uint64_t seed) {
    TaskConfig cfg;
    cfg.tasks.clear();
    for (ControlToken t : kAllTokens)
        if (tasks.find(control_token_char(t)) != std::string::npos) cfg.tasks.push_back(t);
    if (cfg.tasks.size() != tasks.size())
        throw std::invalid_argument("bad task subset string \"" + tasks +
                                    "\" (letters from IARC, each at most once)");
    cfg.n_symbols = embed_dim - cfg.n_control();
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

void OracleState::apply(ControlToken token, std::int64_t t) {
    switch (token) {
        case ControlToken::I:
            current = Task::increment;
            increment = 1;  // fresh (I) restarts the base rule
            break;
        case ControlToken::A:
            current = Task::addition;
            break;
        case ControlToken::R:
            current = Task::reverse;
            anchor = t;
            break;
        case ControlToken::C:
            switch (current) {
                case Task::none:
                    throw std::invalid_argument(
                        "control token C before any task has been established");
                case Task::increment: increment += 1; break;
                case Task::addition: break;  // acts as another (A): no-op
                case Task::reverse: anchor = t; break;
            }
            break;
    }
}

int oracle_next(OracleState& state, const std::vector<int>& history, std::int64_t t,
                std::optional<ControlToken> taped, int n_symbols) {
    if (t < 0) throw std::invalid_argument("oracle_next: negative position");
    if (t >= static_cast<std::int64_t>(history.size()))
        throw std::invalid_argument("oracle_next: history shorter than position t");
    if (taped) state.apply(*taped, t);

    const auto at = [&](std::int64_t i) {
        return history[static_cast<std::size_t>(std::max<std::int64_t>(i, 0))];
    };
    switch (state.current) {
        case OracleState::Task::none:
            throw std::invalid_argument("oracle_next: no task established yet");
        case OracleState::Task::increment:
            return (at(t) + state.increment) % n_symbols;
        case OracleState::Task::addition:
            // x_{-1} is taken as 0, so at t=0 this is x_0 mod N.
            return (at(t) + (t >= 1 ? at(t - 1) : 0)) % n_symbols;
        case OracleState::Task::reverse:
            return at(2 * state.anchor - t);
    }
    return 0;
}

TokenStream generate_stream(const TaskConfig& config, std::int64_t length) {
    config.validate();
    if (length < 1) throw std::invalid_argument("generate_stream: length must be >= 1");

    std::mt19937_64 rng = make_rng(config.seed);
    std::uniform_int_distribution<int> symbol_dist(0, config.n_symbols - 1);
    std::uniform_int_distribution<int> gap_dist(config.spacing_min, config.spacing_max);
    std::uniform_int_distribution<std::size_t> task_dist(0, config.tasks.size() - 1);

    std::vector<ControlToken> setters;
    for (ControlToken t : config.tasks)
        if (t != ControlToken::C) setters.push_back(t);
    std::uniform_int_distribution<std::size_t> setter_dist(0, setters.size() - 1);

    TokenStream stream;
    stream.symbols.resize(static_cast<std::size_t>(length));
    stream.tape.assign(static_cast<std::size_t>(length), std::nullopt);

    stream.symbols[0] = symbol_dist(rng);
    stream.tape[0] = setters[setter_dist(rng)];
    std::int64_t next_control = gap_dist(rng);

    OracleState state;
    for (std::int64_t t = 0; t + 1 < length; ++t) {
        stream.symbols[static_cast<std::size_t>(t + 1)] =
            oracle_next(state, stream.symbols, t, stream.tape[static_cast<std::size_t>(t)],
                        config.n_symbols);
        if (t + 1 == next_control) {
            stream.tape[static_cast<std::size_t>(t + 1)] = config.tasks[task_dist(rng)];
            next_control += gap_dist(rng);
        }
    }
    return stream;
}

bool validate_stream(const TokenStream& stream, const TaskConfig& config) {
    OracleState state;
    for (std::int64_t t = 0; t + 1 < stream.length(); ++t) {
        const auto& taped = stream.tape[static_cast<std::size_t>(t)];
        if (taped && !config.has_task(*taped)) return false;
        if (!taped && state.current == OracleState::Task::none)
            continue;  // free prefix before the first control token
        int predicted;
        try {
            predicted = oracle_next(state, stream.symbols, t, taped, config.n_symbols);
        } catch (const std::invalid_argument&) {
            return false;  // e.g. C before any task
        }
        if (predicted != stream.symbols[static_cast<std::size_t>(t + 1)]) return false;
    }
    for (int s : stream.symbols)
        if (s < 0 || s >= config.n_symbols) return false;
    return true;
}

EncodedBatch slice_windows(const TokenStream& stream, const TaskConfig& config, int n_con,
                           int count, std::mt19937_64& rng) {
    if (n_con < 1 || count < 1) throw std::invalid_argument("slice_windows: bad n_con/count");
    const std::int64_t max_start = stream.length() - n_con - 1;
    if (max_start < 0)
        throw std::invalid_argument("slice_windows: stream of length " +
                                    std::to_string(stream.length()) + " too short for n_con " +
                                    std::to_string(n_con));
    const int d = config.embed_dim();
    const int n = config.n_symbols;

    EncodedBatch batch;
    batch.inputs = Tensor({count, n_con, d});
    batch.targets.resize(static_cast<std::size_t>(count) * n_con);
    std::uniform_int_distribution<std::int64_t> start_dist(0, max_start);

    double* in = batch.inputs.data();
    for (int b = 0; b < count; ++b) {
        const std::int64_t start = start_dist(rng);
        for (int t = 0; t < n_con; ++t) {
            const std::size_t pos = static_cast<std::size_t>(start + t);
            const int sym = stream.symbols[pos];
            if (sym < 0 || sym >= n)
                throw std::invalid_argument("slice_windows: symbol " + std::to_string(sym) +
                                            " outside vocabulary of size " + std::to_string(n));
            double* row = in + (static_cast<std::int64_t>(b) * n_con + t) * d;
            row[sym] = 1.0;
            if (const auto& taped = stream.tape[pos]) row[n + config.tape_slot(*taped)] = 1.0;
            batch.targets[static_cast<std::size_t>(b) * n_con + t] =
                stream.symbols[pos + 1];
        }
    }
    return batch;
}

void dump_stream(const TokenStream& stream, std::ostream& os) {
    for (std::int64_t i = 0; i < stream.length(); ++i) {
        const auto& taped = stream.tape[static_cast<std::size_t>(i)];
        os << i << '\t' << stream.symbols[static_cast<std::size_t>(i)] << '\t'
           << (taped ? control_token_char(*taped) : '-') << '\n';
    }
}

std::string dump_stream(const TokenStream& stream) {
    std::ostringstream os;
    dump_stream(stream, os);
    return os.str();
}

TokenStream parse_stream_dump(std::istream& is) {
    TokenStream stream;
    std::string line;
    std::int64_t expect = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::int64_t idx;
        int sym;
        std::string tape;
        if (!(ls >> idx >> sym >> tape) || tape.size() != 1)
            throw std::invalid_argument("bad stream dump line: \"" + line + "\"");
        if (idx != expect)
            throw std::invalid_argument("stream dump indices not consecutive at line " +
                                        std::to_string(expect));
        ++expect;
        stream.symbols.push_back(sym);
        if (tape[0] == '-') {
            stream.tape.push_back(std::nullopt);
        } else if (auto t = control_token_from_char(tape[0])) {
            stream.tape.push_back(*t);
        } else {
            throw std::invalid_argument("bad tape char in stream dump: \"" + line + "\"");
        }
    }
    return stream;
}

void write_encoded_batch(const EncodedBatch& batch, std::ostream& os) {
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(batch.batch()),
                                   static_cast<std::uint32_t>(batch.n_con()),
                                   static_cast<std::uint32_t>(batch.dim())};
    // Little-endian on every supported target.
    os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    std::vector<float> payload(static_cast<std::size_t>(batch.inputs.size()));
    for (std::int64_t i = 0; i < batch.inputs.size(); ++i)
        payload[static_cast<std::size_t>(i)] = static_cast<float>(batch.inputs.data()[i]);
    os.write(reinterpret_cast<const char*>(payload.data()),
             static_cast<std::streamsize>(payload.size() * sizeof(float)));
}

}  // namespace iarc
