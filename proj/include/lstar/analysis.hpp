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
#include <map>
#include <set>
#include <vector>

#include "lstar/automaton.hpp"

namespace lstar {

// Determinized states reachable from the initial value, in BFS order.
inline std::vector<DetState> reachable_det_states(const SuccinctAutomaton& aut,
                                                  long long max_states = 1 << 16) {
    std::vector<DetState> order;
    std::set<DetState> seen;
    std::deque<DetState> queue{aut.init};
    seen.insert(aut.init);
    while (!queue.empty()) {
        DetState q = std::move(queue.front());
        queue.pop_front();
        order.push_back(q);
        if (static_cast<long long>(order.size()) > max_states)
            throw cap_exceeded("determinization cap exceeded");
        for (Symbol a : aut.alphabet) {
            DetState next = aut.det_step(q, a);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return order;
}

// Size of the minimal automaton with algebraic state space for the target's
// language: close the reachable determinized states under the free algebra
// structure, then quotient by behavioral equivalence (partition refinement).
// Brute-force oracle for tests; throws cap_exceeded when infeasible.
inline int minimal_algebra_size(const SuccinctAutomaton& aut, const EnumCaps& caps = {},
                                long long max_states = 4096) {
    std::vector<DetState> reach = reachable_det_states(aut, max_states);
    std::vector<int> idx(reach.size());
    for (std::size_t i = 0; i < reach.size(); ++i) idx[i] = static_cast<int>(i);
    std::set<DetState> closure_set;
    for (const auto& ctx : aut.effect.enumerate(idx, caps)) {
        closure_set.insert(aut.effect.extend([&](int i) { return reach[i]; }, ctx));
        if (static_cast<long long>(closure_set.size()) > max_states)
            throw cap_exceeded("algebra closure cap exceeded");
    }
    std::vector<DetState> states(closure_set.begin(), closure_set.end());
    std::map<DetState, int> pos;
    for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = static_cast<int>(i);

    std::vector<int> cls(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) cls[i] = aut.det_out(states[i]);
    for (;;) {
        // Signature: current class plus successor classes per symbol.
        std::map<std::vector<int>, int> renumber;
        std::vector<int> next(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::vector<int> sig{cls[i]};
            for (Symbol a : aut.alphabet) sig.push_back(cls[pos.at(aut.det_step(states[i], a))]);
            next[i] = renumber.try_emplace(sig, static_cast<int>(renumber.size())).first->second;
        }
        if (next == cls) return static_cast<int>(renumber.size());
        cls = std::move(next);
    }
}

}  // namespace lstar
