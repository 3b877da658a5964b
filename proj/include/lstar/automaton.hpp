/*
 * Copyright 2026 The lstar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lstar/effect.hpp"

namespace lstar {

using Word = std::string;  // one char per symbol
using Symbol = char;
using Alphabet = std::string;  // sorted, deduplicated

// State of the determinization: an effect value over state indices.
using DetState = Value<int>;

// Effect kind together with its output algebra, as named in automaton files
// and on the command line: identity, powerset, powerset-and, semimodule:<p>,
// maybe, upset, writer:z<n>.
struct EffectSpec {
    Effect effect;
    OutputAlgebra alg;
    std::string name;
};

inline EffectSpec make_effect_spec(const std::string& name, int moore_outputs = 2) {
    EffectSpec s;
    s.name = name;
    if (name == "identity") {
        s.effect = Effect::identity();
        s.alg = OutputAlgebra::moore(moore_outputs);
    } else if (name == "powerset") {
        s.effect = Effect::powerset();
        s.alg = OutputAlgebra::bool_or();
    } else if (name == "powerset-and") {
        s.effect = Effect::powerset();
        s.alg = OutputAlgebra::bool_and();
    } else if (name.rfind("semimodule:", 0) == 0) {
        Semiring ring = Semiring::gf(std::stoi(name.substr(11)));
        s.effect = Effect::semimodule(ring);
        s.alg = OutputAlgebra::field(ring);
    } else if (name == "maybe") {
        s.effect = Effect::maybe();
        s.alg = OutputAlgebra::maybe();
    } else if (name == "upset") {
        s.effect = Effect::upset();
        s.alg = OutputAlgebra::dnf();
    } else if (name.rfind("writer:", 0) == 0) {
        std::string m = name.substr(7);
        if (!m.empty() && (m[0] == 'z' || m[0] == 'Z')) m = m.substr(1);
        Monoid monoid = Monoid::cyclic(std::stoi(m));
        s.effect = Effect::writer(monoid);
        s.alg = OutputAlgebra::action(monoid);
    } else {
        throw std::runtime_error("unknown effect: " + name);
    }
    return s;
}

// Automaton with side-effects: total transition function into T(states),
// initial effect value, and per-state outputs. States are indices; names are
// kept for serialization only.
struct SuccinctAutomaton {
    Effect effect;
    OutputAlgebra alg;
    std::string effect_name;  // as written in files
    Alphabet alphabet;
    std::vector<std::string> state_names;
    DetState init;
    std::vector<std::vector<DetState>> delta;  // [state][symbol index]
    std::vector<int> out;

    int num_states() const { return static_cast<int>(state_names.size()); }

    int symbol_index(Symbol a) const {
        auto pos = alphabet.find(a);
        if (pos == std::string::npos)
            throw std::runtime_error(std::string("symbol outside alphabet: ") + a);
        return static_cast<int>(pos);
    }

    // One determinized step. The free-algebra structure is applied eagerly so
    // effect values never nest.
    DetState det_step(const DetState& q, Symbol a) const {
        int ai = symbol_index(a);
        return effect.extend([&](int s) { return delta[s][ai]; }, q);
    }

    int det_out(const DetState& q) const {
        return extend_to_output(effect, alg, [&](int s) { return out[s]; }, q);
    }

    DetState reach(const Word& w) const {
        DetState q = init;
        for (Symbol a : w) q = det_step(q, a);
        return q;
    }

    int observe(DetState q, const Word& w) const {
        for (Symbol a : w) q = det_step(q, a);
        return det_out(q);
    }

    int language(const Word& w) const { return observe(init, w); }
};

// Lifts a deterministic (Identity-effect) automaton into the given effect via
// the unit, preserving its language. Used to compare hypotheses and targets
// that live in different effects.
inline SuccinctAutomaton lift_identity(const SuccinctAutomaton& aut, const Effect& effect,
                                       const OutputAlgebra& alg, const std::string& name) {
    if (aut.effect.kind != EffectKind::Identity)
        throw std::logic_error("lift_identity requires an identity-effect automaton");
    SuccinctAutomaton lifted = aut;
    lifted.effect = effect;
    lifted.alg = alg;
    lifted.effect_name = name;
    lifted.init = effect.unit(aut.init.elems[0]);
    for (int s = 0; s < aut.num_states(); ++s)
        for (std::size_t ai = 0; ai < aut.alphabet.size(); ++ai)
            lifted.delta[s][ai] = effect.unit(aut.delta[s][ai].elems[0]);
    return lifted;
}

// --- line-oriented automaton file format -----------------------------------
//
//   effect <kind>
//   outputs <n>          (identity only, optional; defaults to 2)
//   alphabet a,b
//   states q0,q1
//   init <EffectValue>
//   trans q a <EffectValue>   (one line per state/symbol, sorted)
//   out q <O>                 (one per state, sorted)

inline void serialize(const SuccinctAutomaton& aut, std::ostream& os) {
    os << "effect " << aut.effect_name << '\n';
    if (aut.effect.kind == EffectKind::Identity && aut.alg.size != 2)
        os << "outputs " << aut.alg.size << '\n';
    os << "alphabet ";
    for (std::size_t i = 0; i < aut.alphabet.size(); ++i)
        os << (i ? "," : "") << aut.alphabet[i];
    os << '\n';
    os << "states ";
    for (std::size_t i = 0; i < aut.state_names.size(); ++i)
        os << (i ? "," : "") << aut.state_names[i];
    os << '\n';
    auto name = [&](int s) { return aut.state_names[s]; };
    os << "init " << value_to_string(aut.effect, aut.init, name) << '\n';
    for (int s = 0; s < aut.num_states(); ++s)
        for (std::size_t ai = 0; ai < aut.alphabet.size(); ++ai)
            os << "trans " << aut.state_names[s] << ' ' << aut.alphabet[ai] << ' '
               << value_to_string(aut.effect, aut.delta[s][ai], name) << '\n';
    for (int s = 0; s < aut.num_states(); ++s)
        os << "out " << aut.state_names[s] << ' ' << aut.out[s] << '\n';
}

inline std::string serialize(const SuccinctAutomaton& aut) {
    std::ostringstream os;
    serialize(aut, os);
    return os.str();
}

inline SuccinctAutomaton parse_automaton(std::istream& is) {
    SuccinctAutomaton aut;
    std::string line;
    int moore_outputs = 2;
    std::string effect_name;
    std::vector<std::string> alphabet_syms;
    struct Trans {
        std::string state, value;
        char symbol;
    };
    std::vector<Trans> trans_lines;
    std::vector<std::pair<std::string, int>> out_lines;
    std::string init_text;
    bool have_init = false;

    auto state_index = [&](const std::string& n) -> int {
        for (std::size_t i = 0; i < aut.state_names.size(); ++i)
            if (aut.state_names[i] == n) return static_cast<int>(i);
        throw std::runtime_error("unknown state: " + n);
    };

    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "effect") {
            ls >> effect_name;
        } else if (key == "outputs") {
            ls >> moore_outputs;
        } else if (key == "alphabet") {
            std::string rest;
            ls >> rest;
            for (const auto& sym : detail::split_commas(rest)) {
                if (sym.size() != 1) throw std::runtime_error("symbols must be single chars");
                aut.alphabet += sym[0];
            }
        } else if (key == "states") {
            std::string rest;
            ls >> rest;
            aut.state_names = detail::split_commas(rest);
        } else if (key == "init") {
            std::getline(ls >> std::ws, init_text);
            have_init = true;
        } else if (key == "trans") {
            Trans t;
            std::string sym;
            ls >> t.state >> sym;
            if (sym.size() != 1) throw std::runtime_error("symbols must be single chars");
            t.symbol = sym[0];
            std::getline(ls >> std::ws, t.value);
            trans_lines.push_back(std::move(t));
        } else if (key == "out") {
            std::string st;
            int o;
            ls >> st >> o;
            out_lines.emplace_back(st, o);
        } else {
            throw std::runtime_error("unknown line in automaton file: " + line);
        }
    }
    if (effect_name.empty() || !have_init || aut.alphabet.empty() || aut.state_names.empty())
        throw std::runtime_error("incomplete automaton file");

    EffectSpec spec = make_effect_spec(effect_name, moore_outputs);
    aut.effect = spec.effect;
    aut.alg = spec.alg;
    aut.effect_name = spec.name;

    auto to_indices = [&](const std::string& text) {
        Value<std::string> v = value_from_string(aut.effect, text);
        return relabel(aut.effect, v, [&](const std::string& n) { return state_index(n); });
    };

    aut.init = to_indices(init_text);
    aut.delta.assign(aut.state_names.size(),
                     std::vector<DetState>(aut.alphabet.size()));
    std::vector<std::vector<bool>> have_trans(aut.state_names.size(),
                                              std::vector<bool>(aut.alphabet.size(), false));
    for (const auto& t : trans_lines) {
        int s = state_index(t.state);
        int ai = aut.symbol_index(t.symbol);
        aut.delta[s][ai] = to_indices(t.value);
        have_trans[s][ai] = true;
    }
    aut.out.assign(aut.state_names.size(), 0);
    std::vector<bool> have_out(aut.state_names.size(), false);
    for (const auto& [st, o] : out_lines) {
        int s = state_index(st);
        if (o < 0 || o >= aut.alg.size) throw std::runtime_error("output out of range");
        aut.out[s] = o;
        have_out[s] = true;
    }
    for (std::size_t s = 0; s < aut.state_names.size(); ++s) {
        if (!have_out[s]) throw std::runtime_error("missing out line for " + aut.state_names[s]);
        for (std::size_t ai = 0; ai < aut.alphabet.size(); ++ai)
            if (!have_trans[s][ai])
                throw std::runtime_error("missing trans line for " + aut.state_names[s]);
    }
    return aut;
}

inline SuccinctAutomaton parse_automaton(const std::string& text) {
    std::istringstream is(text);
    return parse_automaton(is);
}

}  // namespace lstar
