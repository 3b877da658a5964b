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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "lstar/bisim.hpp"
#include "lstar/rng.hpp"

namespace lstar {

// Minimally adequate teacher for an O-valued language.
class Teacher {
public:
    virtual ~Teacher() = default;
    virtual int membership(const Word& w) = 0;
    virtual std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) = 0;
    virtual const Alphabet& alphabet() const = 0;
    virtual int num_outputs() const = 0;
};

struct QueryCounters {
    long long membership = 0;
    long long equivalence = 0;
};

// Random word with geometric length: at each position, stop with probability
// p_stop, else append a uniform symbol.
class WordSampler {
public:
    explicit WordSampler(Alphabet alphabet, double p_stop = 0.2)
        : alphabet_(std::move(alphabet)), p_stop_(p_stop) {}

    Word sample(Rng& rng) const {
        Word w;
        while (rng.unit() >= p_stop_)
            w += alphabet_[rng.below(static_cast<int>(alphabet_.size()))];
        return w;
    }

private:
    Alphabet alphabet_;
    double p_stop_;
};

// Answers from a known target automaton; equivalence is decided exactly by
// bisimulation up to congruence, so counterexamples are shortest.
class ExactTeacher : public Teacher {
public:
    explicit ExactTeacher(SuccinctAutomaton target, long long max_pairs = 1'000'000)
        : target_(std::move(target)), max_pairs_(max_pairs) {}

    int membership(const Word& w) override { return target_.language(w); }

    std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) override {
        return equivalent_languages(hypothesis, target_, max_pairs_);
    }

    const Alphabet& alphabet() const override { return target_.alphabet; }
    int num_outputs() const override { return target_.alg.size; }
    const SuccinctAutomaton& target() const { return target_; }

private:
    SuccinctAutomaton target_;
    long long max_pairs_;
};

// Approximates equivalence by a fixed number of random membership probes.
// May accept a wrong hypothesis; never rejects a correct one.
class RandomTeacher : public Teacher {
public:
    RandomTeacher(SuccinctAutomaton target, int num_tests, std::uint64_t seed)
        : target_(std::move(target)),
          num_tests_(num_tests),
          rng_(seed),
          sampler_(target_.alphabet) {}

    int membership(const Word& w) override { return target_.language(w); }

    std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) override {
        for (int i = 0; i < num_tests_; ++i) {
            Word w = sampler_.sample(rng_);
            if (hypothesis.language(w) != target_.language(w)) return w;
        }
        return std::nullopt;
    }

    const Alphabet& alphabet() const override { return target_.alphabet; }
    int num_outputs() const override { return target_.alg.size; }

private:
    SuccinctAutomaton target_;
    int num_tests_;
    Rng rng_;
    WordSampler sampler_;
};

// PAC sampling: the i-th equivalence query (1-based) draws
//   r_i = ceil((1/eps) * (ln(1/delta) + i * ln 2))
// words, giving the usual (eps, delta) guarantee over the sampling
// distribution.
class PacTeacher : public Teacher {
public:
    PacTeacher(SuccinctAutomaton target, double eps, double delta, std::uint64_t seed)
        : target_(std::move(target)),
          eps_(eps),
          delta_(delta),
          rng_(seed),
          sampler_(target_.alphabet) {}

    static int num_samples(double eps, double delta, int round) {
        return static_cast<int>(
            std::ceil((std::log(1.0 / delta) + round * std::log(2.0)) / eps));
    }

    int membership(const Word& w) override { return target_.language(w); }

    std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) override {
        ++round_;
        int r = num_samples(eps_, delta_, round_);
        for (int i = 0; i < r; ++i) {
            Word w = sampler_.sample(rng_);
            if (hypothesis.language(w) != target_.language(w)) return w;
        }
        return std::nullopt;
    }

    const Alphabet& alphabet() const override { return target_.alphabet; }
    int num_outputs() const override { return target_.alg.size; }

private:
    SuccinctAutomaton target_;
    double eps_;
    double delta_;
    int round_ = 0;
    Rng rng_;
    WordSampler sampler_;
};

// Memoizes membership answers. Placed outside the counting wrapper so that
// counters measure distinct words actually forwarded to the oracle.
class CacheTeacher : public Teacher {
public:
    explicit CacheTeacher(std::shared_ptr<Teacher> inner) : inner_(std::move(inner)) {}

    int membership(const Word& w) override {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        int r = inner_->membership(w);
        cache_.emplace(w, r);
        return r;
    }

    std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) override {
        return inner_->equivalence(hypothesis);
    }

    const Alphabet& alphabet() const override { return inner_->alphabet(); }
    int num_outputs() const override { return inner_->num_outputs(); }

private:
    std::shared_ptr<Teacher> inner_;
    std::map<Word, int> cache_;
};

class CountingTeacher : public Teacher {
public:
    CountingTeacher(std::shared_ptr<Teacher> inner, QueryCounters* counters)
        : inner_(std::move(inner)), counters_(counters) {}

    int membership(const Word& w) override {
        ++counters_->membership;
        return inner_->membership(w);
    }

    std::optional<Word> equivalence(const SuccinctAutomaton& hypothesis) override {
        ++counters_->equivalence;
        return inner_->equivalence(hypothesis);
    }

    const Alphabet& alphabet() const override { return inner_->alphabet(); }
    int num_outputs() const override { return inner_->num_outputs(); }

private:
    std::shared_ptr<Teacher> inner_;
    QueryCounters* counters_;
};

inline std::shared_ptr<Teacher> with_counters_and_cache(std::shared_ptr<Teacher> base,
                                                        QueryCounters* counters) {
    return std::make_shared<CacheTeacher>(
        std::make_shared<CountingTeacher>(std::move(base), counters));
}

// Output of an effect value over words, each extended by the suffix: the
// algebra applied to the membership answers of the support. Answers are
// memoized locally, so at most |support(v)| queries reach the teacher.
inline int extended_membership(Teacher& t, const Effect& effect, const OutputAlgebra& alg,
                               const Value<Word>& v, const Word& suffix) {
    std::map<Word, int> memo;
    return extend_to_output(effect, alg,
                            [&](const Word& w) {
                                auto it = memo.find(w);
                                if (it != memo.end()) return it->second;
                                int r = t.membership(w + suffix);
                                memo.emplace(w, r);
                                return r;
                            },
                            v);
}

}  // namespace lstar
