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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lstar/automaton.hpp"
#include "lstar/rng.hpp"

namespace lstar {

inline Alphabet first_symbols(int k) {
    Alphabet a;
    for (int i = 0; i < k; ++i) a += static_cast<char>('a' + i);
    return a;
}

namespace detail {

inline SuccinctAutomaton skeleton(const std::string& effect_name, int n, int k,
                                  int moore_outputs = 2) {
    EffectSpec spec = make_effect_spec(effect_name, moore_outputs);
    SuccinctAutomaton aut;
    aut.effect = spec.effect;
    aut.alg = spec.alg;
    aut.effect_name = spec.name;
    aut.alphabet = first_symbols(k);
    for (int s = 0; s < n; ++s) aut.state_names.push_back("q" + std::to_string(s));
    aut.delta.assign(n, std::vector<DetState>(k));
    aut.out.assign(n, 0);
    return aut;
}

// m distinct values from {0, .., pool-1}, uniform without replacement
// (partial Fisher-Yates over an index array).
inline std::vector<int> sample_without_replacement(int pool, int m, Rng& rng) {
    std::vector<int> idx(pool);
    for (int i = 0; i < pool; ++i) idx[i] = i;
    for (int i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(pool - i)]);
    idx.resize(m);
    return idx;
}

}  // namespace detail

// Uniform Moore automaton: per state, an output, then a successor per symbol.
inline SuccinctAutomaton gen_moore(int n, int k, int outputs, Rng& rng) {
    SuccinctAutomaton aut = detail::skeleton("identity", n, k, outputs);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s) {
        aut.out[s] = rng.below(outputs);
        for (int ai = 0; ai < k; ++ai) aut.delta[s][ai] = aut.effect.unit(rng.below(n));
    }
    return aut;
}

// Tabakov-Vardi random NFA: per symbol, exactly round(density*n) transitions
// (half-up) drawn uniformly without replacement from the n^2 state pairs;
// floor(n/2) accepting states; state 0 initial.
inline SuccinctAutomaton gen_tabakov_vardi_nfa(int n, int k, double density, Rng& rng) {
    int m = static_cast<int>(std::floor(density * n + 0.5));
    if (m < 0 || m > n * n) throw std::invalid_argument("transition density out of range");
    SuccinctAutomaton aut = detail::skeleton("powerset", n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s)
        for (int ai = 0; ai < k; ++ai) aut.delta[s][ai].kind = EffectKind::Powerset;
    for (int ai = 0; ai < k; ++ai)
        for (int pair : detail::sample_without_replacement(n * n, m, rng))
            aut.delta[pair / n][ai].elems.push_back(pair % n);
    for (int s = 0; s < n; ++s)
        for (int ai = 0; ai < k; ++ai) detail::sort_unique(aut.delta[s][ai].elems);
    for (int acc : detail::sample_without_replacement(n, n / 2, rng)) aut.out[acc] = 1;
    return aut;
}

// Complete weighted automaton over the given field: uniform weight for every
// (state, symbol, state) triple (zeros canonicalize away), uniform outputs,
// initial vector unit(0).
inline SuccinctAutomaton gen_wfa(int n, int k, int field, Rng& rng) {
    SuccinctAutomaton aut = detail::skeleton("semimodule:" + std::to_string(field), n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s)
        for (int ai = 0; ai < k; ++ai) {
            Value<int> v;
            v.kind = EffectKind::FreeSemimodule;
            for (int t = 0; t < n; ++t) {
                int w = rng.below(field);
                if (w != 0) {
                    v.elems.push_back(t);
                    v.coeffs.push_back(w);
                }
            }
            aut.delta[s][ai] = v;
        }
    for (int s = 0; s < n; ++s) aut.out[s] = rng.below(field);
    return aut;
}

// Partial DFA: each transition either targets a uniform state or is absent
// (probability 1/(n+1)); Boolean outputs.
inline SuccinctAutomaton gen_maybe(int n, int k, Rng& rng) {
    SuccinctAutomaton aut = detail::skeleton("maybe", n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s) {
        aut.out[s] = rng.below(2);
        for (int ai = 0; ai < k; ++ai) {
            int t = rng.below(n + 1);
            aut.delta[s][ai] = t == n ? aut.effect.zero<int>() : aut.effect.unit(t);
        }
    }
    return aut;
}

// Uniform writer automaton: each transition carries a uniform monoid element
// and successor; outputs uniform in the monoid carrier.
inline SuccinctAutomaton gen_writer(int n, int k, const Monoid& monoid, Rng& rng) {
    SuccinctAutomaton aut =
        detail::skeleton("writer:z" + std::to_string(monoid.size), n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s) {
        aut.out[s] = rng.below(monoid.size);
        for (int ai = 0; ai < k; ++ai) {
            Value<int> v = aut.effect.unit(rng.below(n));
            v.tag = rng.below(monoid.size);
            aut.delta[s][ai] = v;
        }
    }
    return aut;
}

// Random alternating automaton: transitions are small monotone DNFs (1-2
// clauses of 0-2 states) over the state set; Boolean outputs.
inline SuccinctAutomaton gen_upset(int n, int k, Rng& rng) {
    SuccinctAutomaton aut = detail::skeleton("upset", n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s) {
        aut.out[s] = rng.below(2);
        for (int ai = 0; ai < k; ++ai) {
            Value<int> v;
            v.kind = EffectKind::Upset;
            int num_clauses = 1 + rng.below(2);
            for (int c = 0; c < num_clauses; ++c) {
                std::vector<int> clause;
                int len = rng.below(3);
                for (int j = 0; j < len; ++j) clause.push_back(rng.below(n));
                v.clauses.push_back(std::move(clause));
            }
            detail::minimize_antichain(v.clauses);
            aut.delta[s][ai] = v;
        }
    }
    return aut;
}

// Uniform-subset NFA, usable with either the disjunctive or conjunctive
// output algebra.
inline SuccinctAutomaton gen_random_powerset(int n, int k, bool conjunctive, Rng& rng) {
    SuccinctAutomaton aut =
        detail::skeleton(conjunctive ? "powerset-and" : "powerset", n, k);
    aut.init = aut.effect.unit(0);
    for (int s = 0; s < n; ++s) {
        aut.out[s] = rng.below(2);
        for (int ai = 0; ai < k; ++ai) {
            Value<int> v;
            v.kind = EffectKind::Powerset;
            for (int t = 0; t < n; ++t)
                if (rng.below(2)) v.elems.push_back(t);
            aut.delta[s][ai] = v;
        }
    }
    return aut;
}

}  // namespace lstar
