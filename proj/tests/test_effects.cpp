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

#include "lstar/automaton.hpp"
#include "lstar/rng.hpp"

using namespace lstar;

namespace {

struct Instance {
    Effect effect;
    OutputAlgebra alg;
    std::string name;
};

std::vector<Instance> instances() {
    std::vector<Instance> out;
    for (const char* n : {"identity", "powerset", "powerset-and", "semimodule:2",
                          "semimodule:5", "maybe", "upset", "writer:z3"}) {
        EffectSpec s = make_effect_spec(n, 3);
        out.push_back({s.effect, s.alg, s.name});
    }
    return out;
}

// Random f: X -> T(domain), precomputed as a table over the domain.
std::vector<Value<int>> random_kleisli(const Effect& effect,
                                       const std::vector<Value<int>>& all, int domain_size,
                                       Rng& rng) {
    std::vector<Value<int>> images;
    for (int x = 0; x < domain_size; ++x)
        images.push_back(all[rng.below(static_cast<int>(all.size()))]);
    return images;
}

}  // namespace

TEST_CASE("monad laws", "[effects]") {
    std::vector<int> domain{0, 1, 2};
    for (const auto& inst : instances()) {
        INFO(inst.name);
        const Effect& T = inst.effect;
        auto all = T.enumerate(domain);
        Rng rng(42);

        // Left unit: extend(f, unit(x)) = f(x). Exhaustive over x with random f.
        for (int iter = 0; iter < 400; ++iter) {
            auto images = random_kleisli(T, all, 3, rng);
            auto f = [&](int x) { return images[x]; };
            for (int x : domain) REQUIRE(T.extend(f, T.unit(x)) == f(x));
        }

        // Right unit: extend(unit, v) = v. Exhaustive.
        for (const auto& v : all) REQUIRE(T.extend([&](int x) { return T.unit(x); }, v) == v);

        // Associativity: extend(g) . extend(f) = extend(extend(g) . f).
        for (int iter = 0; iter < 400; ++iter) {
            auto fi = random_kleisli(T, all, 3, rng);
            auto gi = random_kleisli(T, all, 3, rng);
            auto f = [&](int x) { return fi[x]; };
            auto g = [&](int x) { return gi[x]; };
            const auto& v = all[rng.below(static_cast<int>(all.size()))];
            auto lhs = T.extend(g, T.extend(f, v));
            auto rhs = T.extend([&](int x) { return T.extend(g, f(x)); }, v);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("algebra laws", "[effects]") {
    for (const auto& inst : instances()) {
        INFO(inst.name);
        const Effect& T = inst.effect;
        std::vector<int> outputs;
        for (int o = 0; o < inst.alg.size; ++o) outputs.push_back(o);
        auto all = T.enumerate(outputs);

        // Unit law: alpha(unit(o)) = o.
        for (int o : outputs) REQUIRE(apply_algebra(T, inst.alg, T.unit(o)) == o);

        // Multiplication law: alpha(mu(w)) = alpha(T(alpha)(w)) for
        // w in T(T(O)), sampled as extend images over enumerated values.
        Rng rng(7);
        for (int iter = 0; iter < 1000; ++iter) {
            std::vector<Value<int>> images;
            for (std::size_t i = 0; i < outputs.size(); ++i)
                images.push_back(all[rng.below(static_cast<int>(all.size()))]);
            const auto& base = all[rng.below(static_cast<int>(all.size()))];
            Value<Value<int>> w = T.map([&](int o) { return images[o]; }, base);
            int via_mu =
                apply_algebra(T, inst.alg, T.extend([](const Value<int>& x) { return x; }, w));
            int via_map = apply_algebra(
                T, inst.alg,
                T.map([&](const Value<int>& x) { return apply_algebra(T, inst.alg, x); }, w));
            REQUIRE(via_mu == via_map);
        }
    }
}

TEST_CASE("canonical forms are stable under identity maps", "[effects]") {
    std::vector<int> domain{0, 1, 2};
    for (const auto& inst : instances()) {
        INFO(inst.name);
        const Effect& T = inst.effect;
        auto all = T.enumerate(domain);
        // Enumerated values are canonical; mapping the identity re-canonicalizes
        // and must be the identity. Also checks enumerate emits no duplicates.
        for (const auto& v : all) REQUIRE(T.map([](int x) { return x; }, v) == v);
        auto sorted = all;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("support is minimal", "[effects]") {
    std::vector<int> domain{0, 1, 2};
    for (const auto& inst : instances()) {
        INFO(inst.name);
        const Effect& T = inst.effect;
        for (const auto& v : T.enumerate(domain)) {
            auto sup = T.support(v);
            // Functions agreeing on the support agree on map.
            auto g1 = [](int x) { return x + 10; };
            auto g2 = [&](int x) {
                bool in_sup = std::find(sup.begin(), sup.end(), x) != sup.end();
                return in_sup ? x + 10 : x + 50;
            };
            REQUIRE(T.map(g1, v) == T.map(g2, v));
            // Each support element matters: perturbing it alone changes map.
            for (int s : sup) {
                auto g3 = [&](int x) { return x == s ? 99 : x + 10; };
                REQUIRE(T.map(g1, v) != T.map(g3, v));
            }
        }
    }
}

TEST_CASE("textual round trip", "[effects]") {
    std::vector<int> domain{0, 1, 2};
    auto name = [](int x) { return "q" + std::to_string(x); };
    for (const auto& inst : instances()) {
        INFO(inst.name);
        const Effect& T = inst.effect;
        for (const auto& v : T.enumerate(domain)) {
            std::string text = value_to_string(T, v, name);
            Value<std::string> parsed = value_from_string(T, text);
            Value<int> back =
                relabel(T, parsed, [](const std::string& n) { return std::stoi(n.substr(1)); });
            REQUIRE(back == v);
        }
    }
}

TEST_CASE("effect value examples", "[effects]") {
    Effect P = Effect::powerset();
    Value<int> v = P.unit(1);
    REQUIRE(v.elems == std::vector<int>{1});
    // Union canonicalizes: {1} u {0,1} = {0,1}.
    Value<int> w;
    w.kind = EffectKind::Powerset;
    w.elems = {0, 1};
    auto joined = P.extend([&](int) { return w; }, v);
    REQUIRE(joined.elems == std::vector<int>{0, 1});

    Effect V = Effect::semimodule(Semiring::gf(5));
    // 2*x + 3*x = 0 mod 5: cancelling coefficients drop the element.
    Value<int> a;
    a.kind = EffectKind::FreeSemimodule;
    a.elems = {0, 1};
    a.coeffs = {2, 3};
    auto merged = V.extend([&](int) { return V.unit(7); }, a);
    REQUIRE(merged.elems.empty());

    Effect U = Effect::upset();
    // Absorption: {x} or {x,y} = {x}.
    Value<int> d;
    d.kind = EffectKind::Upset;
    d.clauses = {{0}, {0, 1}};
    auto canon = U.map([](int x) { return x; }, d);
    REQUIRE(canon.clauses == std::vector<std::vector<int>>{{0}});

    Effect M = Effect::maybe();
    REQUIRE_FALSE(M.zero<int>().present);
    REQUIRE(M.extend([&](int) { return M.zero<int>(); }, M.unit(3)) == M.zero<int>());

    Effect W = Effect::writer(Monoid::cyclic(3));
    // Tags compose in the monoid: 2 + 2 = 1 mod 3.
    Value<int> t;
    t.kind = EffectKind::Writer;
    t.tag = 2;
    t.elems = {0};
    auto composed = W.extend([&](int) { return t; }, t);
    REQUIRE(composed.tag == 1);
}

TEST_CASE("enumeration caps abort loudly", "[effects]") {
    std::vector<int> big(13);
    for (int i = 0; i < 13; ++i) big[i] = i;
    REQUIRE_THROWS_AS(Effect::powerset().enumerate(big), cap_exceeded);
    std::vector<int> six{0, 1, 2, 3, 4, 5};
    REQUIRE_THROWS_AS(Effect::upset().enumerate(six), cap_exceeded);
}

TEST_CASE("gf requires a prime", "[effects]") {
    REQUIRE_THROWS(Semiring::gf(4));
    REQUIRE(Semiring::gf(5).is_field());
}
