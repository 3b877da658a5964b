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

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lstar/table.hpp"

namespace lstar {

// Configuration conflicts (rejected before any query is issued).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CeMethod { Angluin, MP, RS };
enum class RightInverse { Stored, MaxJsl, SimplifiedJsl };

struct LearnerConfig {
    DecomposeStrategy strategy = DecomposeStrategy::Enumerate;
    ConsistencyMode consistency = ConsistencyMode::Full;
    CeMethod ce = CeMethod::Angluin;
    RightInverse inverse = RightInverse::Stored;
    EnumCaps caps;
    long long max_rounds = 100000;
    long long bisim_max_pairs = 1'000'000;
    std::ostream* trace = nullptr;  // table dump after every fill
};

// Per-effect defaults: the cheapest complete decomposition, and the cheapest
// consistency mode that is still guaranteed for the instance.
inline LearnerConfig default_config(const Effect& effect, const OutputAlgebra& alg) {
    LearnerConfig c;
    switch (effect.kind) {
        case EffectKind::Identity:
            c.strategy = DecomposeStrategy::Enumerate;
            c.consistency = ConsistencyMode::Full;
            break;
        case EffectKind::Powerset:
            c.strategy = alg.conjunctive ? DecomposeStrategy::MeetDual : DecomposeStrategy::JslJoin;
            c.consistency =
                alg.conjunctive ? ConsistencyMode::Full : ConsistencyMode::BolligRfsa;
            // The weakened consistency check only makes progress when
            // counterexamples feed new columns, so pair it with MP handling.
            if (!alg.conjunctive) c.ce = CeMethod::MP;
            break;
        case EffectKind::FreeSemimodule:
            c.strategy = DecomposeStrategy::GaussianField;
            c.consistency = ConsistencyMode::Transpose;
            break;
        case EffectKind::Maybe:
            c.strategy = DecomposeStrategy::MaybeScan;
            c.consistency = ConsistencyMode::Full;
            break;
        case EffectKind::Upset:
            c.strategy = DecomposeStrategy::DnfY;
            c.consistency = ConsistencyMode::Full;
            break;
        case EffectKind::Writer:
            c.strategy = DecomposeStrategy::WriterScan;
            c.consistency = ConsistencyMode::Full;
            break;
    }
    return c;
}

inline void validate_config(const LearnerConfig& c, const Effect& effect,
                            const OutputAlgebra& alg) {
    if (c.consistency == ConsistencyMode::None && c.ce == CeMethod::Angluin)
        throw config_error("consistency mode none requires suffix-based counterexample handling");
    // Prefix-only handling can return the same counterexample forever when the
    // weakened consistency check misses the defect it creates.
    if (c.consistency == ConsistencyMode::BolligRfsa && c.ce == CeMethod::Angluin)
        throw config_error("bollig consistency requires suffix-based counterexample handling");
    if (c.consistency == ConsistencyMode::BolligRfsa &&
        (effect.kind != EffectKind::Powerset || alg.conjunctive))
        throw config_error("bollig consistency is only defined for the disjunctive powerset");
    if (c.inverse != RightInverse::Stored &&
        (effect.kind != EffectKind::Powerset || alg.conjunctive))
        throw config_error("i1/i2 right inverses are only defined for the disjunctive powerset");
    bool strategy_ok = false;
    switch (c.strategy) {
        case DecomposeStrategy::Enumerate:
            strategy_ok = true;
            break;
        case DecomposeStrategy::JslJoin:
            strategy_ok = effect.kind == EffectKind::Powerset && !alg.conjunctive;
            break;
        case DecomposeStrategy::MeetDual:
            strategy_ok = effect.kind == EffectKind::Powerset && alg.conjunctive;
            break;
        case DecomposeStrategy::GaussianField:
            strategy_ok = effect.kind == EffectKind::FreeSemimodule && effect.ring.is_field();
            break;
        case DecomposeStrategy::DnfY:
            strategy_ok = effect.kind == EffectKind::Upset;
            break;
        case DecomposeStrategy::WriterScan:
            strategy_ok = effect.kind == EffectKind::Writer;
            break;
        case DecomposeStrategy::MaybeScan:
            strategy_ok = effect.kind == EffectKind::Maybe;
            break;
    }
    if (!strategy_ok) throw config_error("decomposition strategy does not match the effect");
}

struct RunStats {
    long long mq = 0;
    long long eq = 0;
    long long rounds = 0;
    int final_s = 0;
    int final_e = 0;
    int final_generators = 0;
    long long wall_ms = 0;
};

// A succinct hypothesis: the automaton plus the access word of each state.
struct Hypothesis {
    SuccinctAutomaton aut;
    std::vector<Word> access;  // access[i] labels state i
};

// Greedy removal: drop the first prefix whose row the remaining generators
// still produce, until no removal applies. The result generates every row of
// S and is minimal under single removals.
inline std::vector<int> minimize_generators(const ObservationTable& table,
                                            DecomposeStrategy strategy,
                                            const EnumCaps& caps = {}) {
    std::vector<int> gens(table.prefixes().size());
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i] = static_cast<int>(i);
    bool removed = true;
    while (removed) {
        removed = false;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::vector<int> rest = gens;
            rest.erase(rest.begin() + k);
            if (table.decompose(table.row(table.prefixes()[gens[k]]), strategy, rest, caps)) {
                gens = std::move(rest);
                removed = true;
                break;
            }
        }
    }
    return gens;
}

// Right inverse of row_ext restricted to T(S'): picks, per target row, a
// combination of generators producing it. Values are over positions in S'.
inline Value<int> apply_right_inverse(const ObservationTable& table, const std::vector<int>& gens,
                                      RightInverse choice, DecomposeStrategy strategy,
                                      const std::vector<int>& target, const EnumCaps& caps) {
    switch (choice) {
        case RightInverse::Stored: {
            auto u = table.decompose(target, strategy, gens, caps);
            if (!u) throw std::logic_error("row not generated by S' (closedness violated)");
            // Re-index from S positions to S' positions.
            return relabel(table.effect(), *u, [&](int s_idx) {
                for (std::size_t j = 0; j < gens.size(); ++j)
                    if (gens[j] == s_idx) return static_cast<int>(j);
                throw std::logic_error("decomposition used a non-generator");
            });
        }
        case RightInverse::MaxJsl: {
            Value<int> v;
            v.kind = EffectKind::Powerset;
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (row_leq(table.row(table.prefixes()[gens[j]]), target))
                    v.elems.push_back(static_cast<int>(j));
            return v;
        }
        case RightInverse::SimplifiedJsl: {
            // Keep only rows with no strictly larger row below the target.
            Value<int> v;
            v.kind = EffectKind::Powerset;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                std::vector<int> rj = table.row(table.prefixes()[gens[j]]);
                if (!row_leq(rj, target)) continue;
                bool dominated = false;
                for (std::size_t k = 0; k < gens.size() && !dominated; ++k) {
                    std::vector<int> rk = table.row(table.prefixes()[gens[k]]);
                    if (rk != rj && row_leq(rj, rk) && row_leq(rk, target)) dominated = true;
                }
                if (!dominated) v.elems.push_back(static_cast<int>(j));
            }
            return v;
        }
    }
    throw std::logic_error("unreachable");
}

inline Hypothesis build_succinct(const ObservationTable& table, const std::vector<int>& gens,
                                 RightInverse choice, DecomposeStrategy strategy,
                                 const std::string& effect_name, const EnumCaps& caps = {}) {
    Hypothesis h;
    h.aut.effect = table.effect();
    h.aut.alg = table.alg();
    h.aut.effect_name = effect_name;
    h.aut.alphabet = table.alphabet();
    const auto& s_words = table.prefixes();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        h.aut.state_names.push_back("q" + std::to_string(j));
        h.access.push_back(s_words[gens[j]]);
    }
    auto inv = [&](const std::vector<int>& target) {
        return apply_right_inverse(table, gens, choice, strategy, target, caps);
    };
    h.aut.init = inv(table.row(""));
    h.aut.delta.assign(gens.size(), std::vector<DetState>(h.aut.alphabet.size()));
    h.aut.out.assign(gens.size(), 0);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        h.aut.out[j] = table.cell(s_words[gens[j]], "");
        for (std::size_t ai = 0; ai < h.aut.alphabet.size(); ++ai)
            h.aut.delta[j][ai] = inv(table.row(s_words[gens[j]] + h.aut.alphabet[ai]));
    }
    return h;
}

// R(u)(v): the answer the target would give to v from the hypothesis state
// reached by u, evaluated through real membership queries on the states'
// access words.
inline int compute_R(const Hypothesis& hyp, Teacher& teacher, const Word& u, const Word& v) {
    DetState q = hyp.aut.reach(u);
    Value<Word> labels = relabel(hyp.aut.effect, q, [&](int j) { return hyp.access[j]; });
    return extended_membership(teacher, hyp.aut.effect, hyp.aut.alg, labels, v);
}

// Binary search for a suffix v of z with R(u)(av) != R(ua)(v); precondition
// g(0) != g(|z|) where g(i) = R(z[0..i])(z[i..]).
inline Word rs_split(const Hypothesis& hyp, Teacher& teacher, const Word& z) {
    auto g = [&](std::size_t i) {
        return compute_R(hyp, teacher, z.substr(0, i), z.substr(i));
    };
    int g0 = g(0);
    std::size_t lo = 0, hi = z.size();
    if (g0 == g(hi)) throw std::logic_error("rs_split precondition violated");
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (g(mid) == g0)
            lo = mid;
        else
            hi = mid;
    }
    return z.substr(lo + 1);
}

inline void handle_ce(ObservationTable& table, const Hypothesis& hyp, Teacher& teacher,
                      const Word& z, CeMethod method) {
    switch (method) {
        case CeMethod::Angluin:
            table.add_prefixes_of(z);
            break;
        case CeMethod::MP:
            for (std::size_t i = 0; i <= z.size(); ++i) table.add_suffix(z.substr(i));
            break;
        case CeMethod::RS: {
            if (compute_R(hyp, teacher, "", z) != teacher.membership(z))
                table.add_suffix(z);
            else
                table.add_suffix(rs_split(hyp, teacher, z));
            break;
        }
    }
}

// The main loop: repair closedness then consistency until both hold, build
// the succinct hypothesis over a minimal generator set, query equivalence,
// process the counterexample, repeat.
inline std::pair<Hypothesis, RunStats> lstar_t(std::shared_ptr<Teacher> base,
                                               const LearnerConfig& config,
                                               const Effect& effect, const OutputAlgebra& alg,
                                               const std::string& effect_name) {
    validate_config(config, effect, alg);
    QueryCounters counters;
    auto teacher = with_counters_and_cache(base, &counters);
    ObservationTable table(effect, alg, teacher.get());
    RunStats stats;
    auto refill = [&] {
        table.fill();
        if (config.trace) {
            table.dump(*config.trace);
            *config.trace << '\n';
        }
    };
    refill();
    for (long long round = 0; round < config.max_rounds; ++round) {
        for (;;) {
            if (auto defect = table.closedness_defect(config.strategy, config.caps)) {
                table.add_prefix(defect->first + defect->second);
                refill();
                continue;
            }
            if (auto column = table.consistency_defect(config.consistency, config.caps)) {
                table.add_suffix(*column);
                refill();
                continue;
            }
            break;
        }
        std::vector<int> gens = minimize_generators(table, config.strategy, config.caps);
        Hypothesis hyp =
            build_succinct(table, gens, config.inverse, config.strategy, effect_name, config.caps);
        ++stats.rounds;
        auto ce = teacher->equivalence(hyp.aut);
        if (!ce) {
            stats.mq = counters.membership;
            stats.eq = counters.equivalence;
            stats.final_s = static_cast<int>(table.prefixes().size());
            stats.final_e = static_cast<int>(table.suffixes().size());
            stats.final_generators = static_cast<int>(gens.size());
            return {std::move(hyp), stats};
        }
        handle_ce(table, hyp, *teacher, *ce, config.ce);
        refill();
    }
    throw std::runtime_error("learner did not converge within the round limit");
}

}  // namespace lstar
