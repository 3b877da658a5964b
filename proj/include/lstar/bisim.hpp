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

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lstar/automaton.hpp"

namespace lstar {

using StatePair = std::pair<DetState, DetState>;

// Decides whether `candidate` lies in the congruence closure of the relation,
// i.e. whether it can be written as C[(l1,r1), ..] for some algebraic context
// C applied componentwise. Soundness is required; completeness only speeds up
// the bisimulation.
using ContextChecker =
    std::function<bool(const std::vector<StatePair>&, const StatePair&)>;

namespace detail {

inline bool pair_in(const std::vector<StatePair>& rel, const StatePair& p) {
    for (const auto& q : rel)
        if (q == p) return true;
    return false;
}

// Generic closure test: enumerate T over relation indices and apply the
// Kleisli extensions of both projections. Exact but exponential; falls back
// to plain membership when the enumeration cap trips.
inline ContextChecker context_check_enumerate(Effect effect, EnumCaps caps) {
    return [effect, caps](const std::vector<StatePair>& rel, const StatePair& p) {
        std::vector<int> idx(rel.size());
        for (std::size_t i = 0; i < rel.size(); ++i) idx[i] = static_cast<int>(i);
        try {
            for (const auto& ctx : effect.enumerate(idx, caps)) {
                DetState l = effect.extend([&](int i) { return rel[i].first; }, ctx);
                if (l != p.first) continue;
                DetState r = effect.extend([&](int i) { return rel[i].second; }, ctx);
                if (r == p.second) return true;
            }
            return false;
        } catch (const cap_exceeded&) {
            return pair_in(rel, p);
        }
    };
}

// Join-semilattice closure: the only candidate decomposition that can work is
// the union of all pairs dominated by the candidate on both sides, so the
// test is both sound and complete.
inline bool context_check_powerset(const std::vector<StatePair>& rel, const StatePair& p) {
    std::vector<int> l, r;
    for (const auto& [lf, rt] : rel)
        if (subset_of(lf.elems, p.first.elems) && subset_of(rt.elems, p.second.elems)) {
            l.insert(l.end(), lf.elems.begin(), lf.elems.end());
            r.insert(r.end(), rt.elems.begin(), rt.elems.end());
        }
    sort_unique(l);
    sort_unique(r);
    return l == p.first.elems && r == p.second.elems;
}

// Vector-space closure: the candidate is congruent iff the stacked vector
// (left | right) lies in the span of the relation's stacked vectors. Solved
// by Gaussian elimination over the field.
inline bool context_check_span(const Semiring& f, const std::vector<StatePair>& rel,
                               const StatePair& p) {
    // Column layout: left states first, then right states, indexed via a map
    // so state id gaps are harmless.
    std::map<std::pair<int, int>, int> col;
    auto columns = [&](const StatePair& q) {
        for (int side = 0; side < 2; ++side) {
            const DetState& v = side ? q.second : q.first;
            for (int s : v.elems) col.try_emplace({side, s}, 0);
        }
    };
    for (const auto& q : rel) columns(q);
    columns(p);
    int ncols = 0;
    for (auto& [k, c] : col) c = ncols++;

    auto stack = [&](const StatePair& q) {
        std::vector<int> row(ncols, f.zero);
        for (int side = 0; side < 2; ++side) {
            const DetState& v = side ? q.second : q.first;
            for (std::size_t i = 0; i < v.elems.size(); ++i)
                row[col.at({side, v.elems[i]})] = v.coeffs[i];
        }
        return row;
    };

    std::vector<std::vector<int>> basis;
    for (const auto& q : rel) basis.push_back(stack(q));
    std::vector<int> target = stack(p);

    // Reduce target against an echelonized basis; in span iff it vanishes.
    std::vector<std::vector<int>> rows = basis;
    std::size_t rank = 0;
    for (int c = 0; c < ncols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == f.zero) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = f.inv(rows[rank][c]);
        for (int& x : rows[rank]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][c] != f.zero) {
                int factor = f.neg(rows[i][c]);
                for (int cc = 0; cc < ncols; ++cc)
                    rows[i][cc] = f.add(rows[i][cc], f.mul(factor, rows[rank][cc]));
            }
        if (target[c] != f.zero) {
            int factor = f.neg(target[c]);
            for (int cc = 0; cc < ncols; ++cc)
                target[cc] = f.add(target[cc], f.mul(factor, rows[rank][cc]));
        }
        ++rank;
    }
    for (int x : target)
        if (x != f.zero) return false;
    return true;
}

}  // namespace detail

inline ContextChecker make_context_checker(const Effect& effect, EnumCaps caps = {}) {
    switch (effect.kind) {
        case EffectKind::Identity:
            return [](const std::vector<StatePair>& rel, const StatePair& p) {
                return detail::pair_in(rel, p);
            };
        case EffectKind::Powerset:
            return detail::context_check_powerset;
        case EffectKind::FreeSemimodule: {
            Semiring f = effect.ring;
            return [f](const std::vector<StatePair>& rel, const StatePair& p) {
                return detail::context_check_span(f, rel, p);
            };
        }
        case EffectKind::Maybe:
            return [](const std::vector<StatePair>& rel, const StatePair& p) {
                if (!p.first.present && !p.second.present) return true;
                return detail::pair_in(rel, p);
            };
        default:
            return detail::context_check_enumerate(effect, caps);
    }
}

// Bisimulation up to congruence between two automata over the same alphabet
// and output carrier. Returns the shortest word on which the languages differ
// (BFS order, then alphabet order), or nullopt if they agree everywhere.
inline std::optional<Word> bisim_up_to(const SuccinctAutomaton& a, const SuccinctAutomaton& b,
                                       const ContextChecker& check,
                                       long long max_pairs = 1'000'000) {
    if (a.alphabet != b.alphabet)
        throw std::logic_error("bisimulation requires matching alphabets");

    std::vector<StatePair> rel;
    std::set<StatePair> seen;
    std::deque<std::pair<StatePair, Word>> queue;
    queue.push_back({{a.init, b.init}, Word{}});
    long long processed = 0;
    while (!queue.empty()) {
        auto [p, w] = std::move(queue.front());
        queue.pop_front();
        if (a.det_out(p.first) != b.det_out(p.second)) return w;
        if (seen.count(p) || check(rel, p)) continue;
        seen.insert(p);
        rel.push_back(p);
        if (++processed > max_pairs) throw cap_exceeded("bisimulation pair cap exceeded");
        for (Symbol sym : a.alphabet)
            queue.push_back({{a.det_step(p.first, sym), b.det_step(p.second, sym)}, w + sym});
    }
    return std::nullopt;
}

inline std::optional<Word> bisim_up_to(const SuccinctAutomaton& a, const SuccinctAutomaton& b,
                                       long long max_pairs = 1'000'000) {
    // Mixed effect kinds admit no common algebraic context; the congruence
    // closure degenerates to the visited set, which the BFS tracks anyway.
    ContextChecker check =
        a.effect.kind == b.effect.kind
            ? make_context_checker(a.effect)
            : ContextChecker([](const std::vector<StatePair>&, const StatePair&) {
                  return false;
              });
    return bisim_up_to(a, b, check, max_pairs);
}

// Language equivalence; effect kinds may differ (e.g. a deterministic
// hypothesis against a nondeterministic or weighted target).
inline std::optional<Word> equivalent_languages(const SuccinctAutomaton& a,
                                                const SuccinctAutomaton& b,
                                                long long max_pairs = 1'000'000) {
    return bisim_up_to(a, b, max_pairs);
}

}  // namespace lstar
