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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lstar/generators.hpp"
#include "lstar/learner.hpp"

namespace lstar::testing {

// The 3-state DFA for L = {w in a* : |w| != 1}.
inline SuccinctAutomaton dfa_not_length_one() {
    return parse_automaton(std::string("effect identity\n"
                                       "alphabet a\n"
                                       "states q0,q1,q2\n"
                                       "init q0\n"
                                       "trans q0 a q1\n"
                                       "trans q1 a q2\n"
                                       "trans q2 a q2\n"
                                       "out q0 1\n"
                                       "out q1 0\n"
                                       "out q2 1\n"));
}

// The 2-state NFA for the same language.
inline SuccinctAutomaton nfa_not_length_one() {
    return parse_automaton(std::string("effect powerset\n"
                                       "alphabet a\n"
                                       "states q0,q1\n"
                                       "init {q0}\n"
                                       "trans q0 a {q1}\n"
                                       "trans q1 a {q0,q1}\n"
                                       "out q0 1\n"
                                       "out q1 0\n"));
}

// Teacher backed by a plain function; for handcrafted tables.
class FnTeacher : public Teacher {
public:
    FnTeacher(Alphabet alphabet, int outputs, std::function<int(const Word&)> fn)
        : alphabet_(std::move(alphabet)), outputs_(outputs), fn_(std::move(fn)) {}

    int membership(const Word& w) override { return fn_(w); }
    std::optional<Word> equivalence(const SuccinctAutomaton&) override { return std::nullopt; }
    const Alphabet& alphabet() const override { return alphabet_; }
    int num_outputs() const override { return outputs_; }

private:
    Alphabet alphabet_;
    int outputs_;
    std::function<int(const Word&)> fn_;
};

// Counts raw membership calls reaching the wrapped teacher.
class ProbeTeacher : public Teacher {
public:
    explicit ProbeTeacher(std::shared_ptr<Teacher> inner) : inner_(std::move(inner)) {}

    long long calls = 0;

    int membership(const Word& w) override {
        ++calls;
        return inner_->membership(w);
    }
    std::optional<Word> equivalence(const SuccinctAutomaton& h) override {
        return inner_->equivalence(h);
    }
    const Alphabet& alphabet() const override { return inner_->alphabet(); }
    int num_outputs() const override { return inner_->num_outputs(); }

private:
    std::shared_ptr<Teacher> inner_;
};

// Random target for the named effect; sizes kept small enough for brute-force
// verification.
inline SuccinctAutomaton random_target(const std::string& effect_name, int n, int k, Rng& rng) {
    if (effect_name == "identity") return gen_moore(n, k, 3, rng);
    if (effect_name == "powerset") return gen_tabakov_vardi_nfa(n, k, 1.25, rng);
    if (effect_name == "powerset-and") return gen_random_powerset(n, k, true, rng);
    if (effect_name.rfind("semimodule:", 0) == 0)
        return gen_wfa(n, k, std::stoi(effect_name.substr(11)), rng);
    if (effect_name == "maybe") return gen_maybe(n, k, rng);
    if (effect_name == "upset") return gen_upset(n, k, rng);
    if (effect_name.rfind("writer:z", 0) == 0)
        return gen_writer(n, k, Monoid::cyclic(std::stoi(effect_name.substr(8))), rng);
    throw std::runtime_error("unknown effect: " + effect_name);
}

}  // namespace lstar::testing
