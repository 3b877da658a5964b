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

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lstar/analysis.hpp"

using namespace lstar;
using namespace lstar::testing;

TEST_CASE("reference machines accept the right words", "[automata]") {
    auto dfa = dfa_not_length_one();
    auto nfa = nfa_not_length_one();
    for (const char* w : {"", "a", "aa", "aaa", "aaaa"}) {
        int expect = std::string(w).size() != 1;
        REQUIRE(dfa.language(w) == expect);
        REQUIRE(nfa.language(w) == expect);
    }
    // reach/observe agree with language.
    REQUIRE(nfa.reach("aa").elems == std::vector<int>{0, 1});
    REQUIRE(nfa.observe(nfa.reach("a"), "a") == 1);
    REQUIRE(dfa.reach("aaa").elems == std::vector<int>{2});
}

TEST_CASE("serialization round trip", "[automata]") {
    Monoid z3 = Monoid::cyclic(3);
    std::uint64_t seed = 11;
    for (int iter = 0; iter < 20; ++iter) {
        Rng rng(seed + iter);
        std::vector<SuccinctAutomaton> targets = {
            gen_moore(4, 3, 3, rng),          gen_tabakov_vardi_nfa(4, 3, 1.25, rng),
            gen_wfa(3, 3, 5, rng),            gen_maybe(4, 2, rng),
            gen_writer(4, 2, z3, rng),        gen_upset(3, 2, rng),
            gen_random_powerset(4, 2, true, rng),
        };
        for (const auto& aut : targets) {
            std::string text = serialize(aut);
            SuccinctAutomaton back = parse_automaton(text);
            REQUIRE(serialize(back) == text);
            // Behavior survives the round trip.
            WordSampler sampler(aut.alphabet);
            Rng wrng(99 + iter);
            for (int q = 0; q < 20; ++q) {
                Word w = sampler.sample(wrng);
                REQUIRE(back.language(w) == aut.language(w));
            }
        }
    }
}

TEST_CASE("parser rejects malformed files", "[automata]") {
    REQUIRE_THROWS(parse_automaton(std::string("effect identity\n")));
    // Missing transition line.
    REQUIRE_THROWS(parse_automaton(std::string("effect identity\nalphabet a\nstates q0\n"
                                               "init q0\nout q0 1\n")));
    // Output outside the carrier.
    REQUIRE_THROWS(parse_automaton(std::string("effect identity\nalphabet a\nstates q0\n"
                                               "init q0\ntrans q0 a q0\nout q0 7\n")));
    // Unknown state in a transition.
    REQUIRE_THROWS(parse_automaton(std::string("effect identity\nalphabet a\nstates q0\n"
                                               "init q0\ntrans q0 a q9\nout q0 1\n")));
    REQUIRE_THROWS(make_effect_spec("frobnicate"));
}

TEST_CASE("lift preserves the language", "[automata]") {
    auto dfa = dfa_not_length_one();
    EffectSpec p = make_effect_spec("powerset");
    auto lifted = lift_identity(dfa, p.effect, p.alg, p.name);
    for (const char* w : {"", "a", "aa", "aaa"}) REQUIRE(lifted.language(w) == dfa.language(w));
}

TEST_CASE("minimal size oracle", "[automata]") {
    // The 2-state NFA needs 3 deterministic states.
    SuccinctAutomaton nfa = nfa_not_length_one();
    EffectSpec id = make_effect_spec("identity");
    REQUIRE(reachable_det_states(nfa).size() == 3);
    REQUIRE(minimal_algebra_size(dfa_not_length_one()) == 3);
}

TEST_CASE("comment and blank lines are ignored", "[automata]") {
    auto aut = parse_automaton(std::string("# header comment\n\neffect identity\nalphabet a\n"
                                           "states q0\ninit q0\ntrans q0 a q0\nout q0 1\n"));
    REQUIRE(aut.language("aaa") == 1);
}
