// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "iarc/model.hpp"

#include <sstream>
#include <stdexcept>

#include "iarc/baselines.hpp"
#include "iarc/rng.hpp"
#include "iarc/transformer.hpp"

namespace iarc {

const char* arch_name(Arch a) {
    switch (a) {
        case Arch::transformer: return "transformer";
        case Arch::cisformer: return "cisformer";
        case Arch::mlp: return "mlp";
        case Arch::lstm: return "lstm";
    }
    return "?";
}

Arch arch_from_name(const std::string& name) {
    for (Arch a : {Arch::transformer, Arch::cisformer, Arch::mlp, Arch::lstm})
        if (name == arch_name(a)) return a;
    throw std::invalid_argument("unknown architecture: " + name);
}

void ModelSpec::validate() const {
    if (layers < 1) throw std::invalid_argument("model needs at least one layer");
    if (d < 1 || n_con < 1 || n_symbols < 2) throw std::invalid_argument("bad model dims");
    if (n_symbols > d) throw std::invalid_argument("embed dim must cover the symbol slots");
    if (uses_attention() && (heads < 1 || d % heads != 0))
        throw std::invalid_argument("heads must divide the embed dim");
}

std::string ModelSpec::serialize() const {
    std::ostringstream os;
    os << "arch=" << arch_name(arch) << "\n"
       << "attention=" << attn_kind_name(attention) << "\n"
       << "layers=" << layers << "\n"
       << "d=" << d << "\n"
       << "n_con=" << n_con << "\n"
       << "heads=" << heads << "\n"
       << "n_symbols=" << n_symbols << "\n";
    return os.str();
}

ModelSpec ModelSpec::parse(const std::string& text) {
    ModelSpec spec;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad model spec line: \"" + line + "\"");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "arch") {
            spec.arch = arch_from_name(value);
        } else if (key == "attention") {
            spec.attention = attn_kind_from_name(value);
        } else if (key == "layers") {
            spec.layers = std::stoi(value);
        } else if (key == "d") {
            spec.d = std::stoi(value);
        } else if (key == "n_con") {
            spec.n_con = std::stoi(value);
        } else if (key == "heads") {
            spec.heads = std::stoi(value);
        } else if (key == "n_symbols") {
            spec.n_symbols = std::stoi(value);
        } else {
            throw std::invalid_argument("unknown model spec key: \"" + key + "\"");
        }
    }
    spec.validate();
    return spec;
}

std::int64_t param_count(const ModelSpec& spec) {
    spec.validate();
    const std::int64_t d = spec.d, n = spec.n_symbols, t = spec.n_con, l = spec.layers;
    const std::int64_t block = 11 * d * d + kFfnMult * d;  // five matrices plus hidden bias
    switch (spec.arch) {
        case Arch::transformer: return l * block + d * n;
        case Arch::cisformer: return l * t * block + t * d * n;
        case Arch::mlp: return l * d * d * t * (t + 1) / 2 + t * d * n;
        case Arch::lstm: {
            const std::int64_t h = kLstmHidden;
            std::int64_t total = 4 * (h * (d + h) + h);             // first layer
            total += (l - 1) * 4 * (h * (2 * h) + h);               // stacked layers
            return total + h * n;                                   // readout
        }
    }
    return 0;
}

std::int64_t Model::stored_count() {
    std::int64_t total = 0;
    for (Tensor* p : params()) total += p->size();
    return total;
}

Tensor init_uniform_fan_in(const std::vector<int>& shape, int fan_in, std::uint64_t model_seed,
                           int ordinal) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    auto rng = make_rng(derive_seed(model_seed, static_cast<std::uint64_t>(ordinal)));
    return Tensor::uniform(shape, -bound, bound, rng);
}

std::unique_ptr<Model> build_model(const ModelSpec& spec, std::uint64_t seed) {
    spec.validate();
    switch (spec.arch) {
        case Arch::transformer: return std::make_unique<TransformerModel>(spec, seed);
        case Arch::cisformer: return std::make_unique<CisformerModel>(spec, seed);
        case Arch::mlp: return std::make_unique<MlpModel>(spec, seed);
        case Arch::lstm: return std::make_unique<LstmModel>(spec, seed);
    }
    throw std::invalid_argument("unknown architecture");
}

}  // namespace iarc
