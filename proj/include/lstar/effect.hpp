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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lstar/scalar.hpp"

namespace lstar {

// Thrown when a brute-force enumeration would explode. Enumeration is a test
// oracle and a fallback, not a production path.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EffectKind { Identity, Powerset, FreeSemimodule, Maybe, Upset, Writer };

// Canonical finite representation of T(X). Exactly one field group is
// populated depending on the kind:
//   Identity       elems = {x}
//   Powerset       elems sorted, deduplicated
//   FreeSemimodule elems sorted, coeffs parallel, no zero coefficients
//   Maybe          present + elems = {x} or empty
//   Upset          clauses: antichain of minimal clauses (monotone DNF),
//                  each clause sorted, clauses sorted, none contains another
//   Writer         tag = monoid element, elems = {x}
//
// Canonical form is unique per mathematical value, so structural equality
// coincides with semantic equality.
template <typename X>
struct Value {
    EffectKind kind = EffectKind::Identity;
    bool present = true;  // Maybe only
    int tag = 0;          // Writer only
    std::vector<X> elems;
    std::vector<int> coeffs;
    std::vector<std::vector<X>> clauses;

    auto operator<=>(const Value&) const = default;
};

namespace detail {

template <typename X>
void sort_unique(std::vector<X>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Is a a subset of b? Both sorted.
template <typename X>
bool subset_of(const std::vector<X>& a, const std::vector<X>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Drop dominated clauses: a clause is redundant if some other clause is a
// subset of it (monotone DNF absorption).
template <typename X>
void minimize_antichain(std::vector<std::vector<X>>& cls) {
    for (auto& c : cls) sort_unique(c);
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    std::vector<std::vector<X>> out;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < cls.size() && !dominated; ++j)
            if (i != j && subset_of(cls[j], cls[i])) dominated = true;
        if (!dominated) out.push_back(cls[i]);
    }
    cls = std::move(out);
}

// DNF conjunction: cross product of clauses.
template <typename X>
std::vector<std::vector<X>> dnf_and(const std::vector<std::vector<X>>& a,
                                    const std::vector<std::vector<X>>& b) {
    std::vector<std::vector<X>> out;
    for (const auto& ca : a)
        for (const auto& cb : b) {
            std::vector<X> c = ca;
            c.insert(c.end(), cb.begin(), cb.end());
            sort_unique(c);
            out.push_back(std::move(c));
        }
    minimize_antichain(out);
    return out;
}

}  // namespace detail

struct EnumCaps {
    int powerset_domain = 12;
    int upset_domain = 5;  // antichain counts explode past this
    long long max_count = 1 << 20;
};

// The effect abstraction: a monad T preserving finite sets, described by its
// kind plus the scalar structure (free semimodule) or monoid (writer) it
// carries.
struct Effect {
    EffectKind kind = EffectKind::Identity;
    Semiring ring;
    Monoid monoid;

    static Effect identity() { return {EffectKind::Identity, {}, {}}; }
    static Effect powerset() { return {EffectKind::Powerset, {}, {}}; }
    static Effect semimodule(Semiring s) { return {EffectKind::FreeSemimodule, std::move(s), {}}; }
    static Effect maybe() { return {EffectKind::Maybe, {}, {}}; }
    static Effect upset() { return {EffectKind::Upset, {}, {}}; }
    static Effect writer(Monoid m) { return {EffectKind::Writer, {}, std::move(m)}; }

    template <typename X>
    Value<X> unit(const X& x) const {
        Value<X> v;
        v.kind = kind;
        switch (kind) {
            case EffectKind::Identity:
            case EffectKind::Powerset:
                v.elems = {x};
                break;
            case EffectKind::FreeSemimodule:
                if (ring.one != ring.zero) {
                    v.elems = {x};
                    v.coeffs = {ring.one};
                }
                break;
            case EffectKind::Maybe:
                v.present = true;
                v.elems = {x};
                break;
            case EffectKind::Upset:
                v.clauses = {{x}};
                break;
            case EffectKind::Writer:
                v.tag = monoid.unit;
                v.elems = {x};
                break;
        }
        return v;
    }

    // The additive zero where one exists (empty set, empty combination,
    // absent, false). Identity and Writer have none.
    template <typename X>
    Value<X> zero() const {
        Value<X> v;
        v.kind = kind;
        switch (kind) {
            case EffectKind::Powerset:
            case EffectKind::FreeSemimodule:
            case EffectKind::Upset:
                break;
            case EffectKind::Maybe:
                v.present = false;
                break;
            default:
                throw std::logic_error("effect has no zero value");
        }
        return v;
    }

    bool has_zero() const {
        return kind == EffectKind::Powerset || kind == EffectKind::FreeSemimodule ||
               kind == EffectKind::Upset || kind == EffectKind::Maybe;
    }

    // Kleisli extension f#: TX -> TY of f: X -> TY.
    template <typename X, typename F>
    auto extend(F&& f, const Value<X>& v) const
        -> std::decay_t<decltype(f(std::declval<const X&>()))> {
        using VY = std::decay_t<decltype(f(std::declval<const X&>()))>;
        using Y = typename std::decay_t<decltype(std::declval<VY>().elems)>::value_type;
        VY out;
        out.kind = kind;
        switch (kind) {
            case EffectKind::Identity:
                out = f(v.elems[0]);
                break;
            case EffectKind::Powerset: {
                for (const auto& x : v.elems) {
                    VY fx = f(x);
                    out.elems.insert(out.elems.end(), fx.elems.begin(), fx.elems.end());
                }
                detail::sort_unique(out.elems);
                break;
            }
            case EffectKind::FreeSemimodule: {
                std::map<Y, int> acc;
                for (std::size_t i = 0; i < v.elems.size(); ++i) {
                    VY fx = f(v.elems[i]);
                    for (std::size_t j = 0; j < fx.elems.size(); ++j) {
                        int& slot = acc.try_emplace(fx.elems[j], ring.zero).first->second;
                        slot = ring.add(slot, ring.mul(v.coeffs[i], fx.coeffs[j]));
                    }
                }
                for (const auto& [y, c] : acc)
                    if (c != ring.zero) {
                        out.elems.push_back(y);
                        out.coeffs.push_back(c);
                    }
                break;
            }
            case EffectKind::Maybe:
                if (!v.present) {
                    out.present = false;
                } else {
                    out = f(v.elems[0]);
                }
                break;
            case EffectKind::Upset: {
                // Monotone DNF substitution: OR over clauses of the AND of
                // the images of the clause's variables.
                for (const auto& clause : v.clauses) {
                    std::vector<std::vector<Y>> conj = {{}};  // empty AND = true
                    for (const auto& x : clause) conj = detail::dnf_and(conj, f(x).clauses);
                    out.clauses.insert(out.clauses.end(), conj.begin(), conj.end());
                }
                detail::minimize_antichain(out.clauses);
                break;
            }
            case EffectKind::Writer: {
                VY fx = f(v.elems[0]);
                out.tag = monoid.mul(v.tag, fx.tag);
                out.elems = fx.elems;
                break;
            }
        }
        return out;
    }

    // Functorial action Tg, i.e. extend(unit . g).
    template <typename X, typename G>
    auto map(G&& g, const Value<X>& v) const
        -> Value<std::decay_t<decltype(g(std::declval<const X&>()))>> {
        using Y = std::decay_t<decltype(g(std::declval<const X&>()))>;
        return extend([&](const X& x) { return unit<Y>(g(x)); }, v);
    }

    // Minimal list of X-elements the value depends on; map(g, v) is fully
    // determined by g's restriction to this list.
    template <typename X>
    std::vector<X> support(const Value<X>& v) const {
        if (kind == EffectKind::Upset) {
            std::vector<X> out;
            for (const auto& c : v.clauses) out.insert(out.end(), c.begin(), c.end());
            detail::sort_unique(out);
            return out;
        }
        return v.elems;
    }

    // Every canonical value over the given domain, each exactly once.
    template <typename X>
    std::vector<Value<X>> enumerate(const std::vector<X>& domain,
                                    const EnumCaps& caps = {}) const {
        const int n = static_cast<int>(domain.size());
        std::vector<Value<X>> out;
        auto guard = [&](long long count) {
            if (count > caps.max_count)
                throw cap_exceeded("enumeration cap exceeded (" + std::to_string(count) +
                                   " values)");
        };
        switch (kind) {
            case EffectKind::Identity:
                for (const auto& x : domain) out.push_back(unit(x));
                break;
            case EffectKind::Powerset: {
                if (n > caps.powerset_domain)
                    throw cap_exceeded("powerset enumeration domain too large");
                guard(1LL << n);
                for (long long mask = 0; mask < (1LL << n); ++mask) {
                    Value<X> v;
                    v.kind = kind;
                    for (int i = 0; i < n; ++i)
                        if (mask >> i & 1) v.elems.push_back(domain[i]);
                    out.push_back(std::move(v));
                }
                break;
            }
            case EffectKind::FreeSemimodule: {
                long long count = 1;
                for (int i = 0; i < n; ++i) {
                    count *= ring.size;
                    guard(count);
                }
                std::vector<int> cv(n, ring.zero);
                for (long long k = 0; k < count; ++k) {
                    Value<X> v;
                    v.kind = kind;
                    for (int i = 0; i < n; ++i)
                        if (cv[i] != ring.zero) {
                            v.elems.push_back(domain[i]);
                            v.coeffs.push_back(cv[i]);
                        }
                    out.push_back(std::move(v));
                    for (int i = n - 1; i >= 0; --i) {
                        if (++cv[i] < ring.size) break;
                        cv[i] = 0;
                    }
                }
                break;
            }
            case EffectKind::Maybe:
                out.push_back(zero<X>());
                for (const auto& x : domain) out.push_back(unit(x));
                break;
            case EffectKind::Upset: {
                if (n > caps.upset_domain)
                    throw cap_exceeded("upset enumeration domain too large");
                // All subsets of the domain, then all antichains thereof.
                std::vector<std::vector<X>> subsets;
                for (long long mask = 0; mask < (1LL << n); ++mask) {
                    std::vector<X> c;
                    for (int i = 0; i < n; ++i)
                        if (mask >> i & 1) c.push_back(domain[i]);
                    subsets.push_back(std::move(c));
                }
                std::vector<std::vector<X>> chosen;
                std::function<void(std::size_t)> rec = [&](std::size_t i) {
                    if (i == subsets.size()) {
                        Value<X> v;
                        v.kind = kind;
                        v.clauses = chosen;
                        std::sort(v.clauses.begin(), v.clauses.end());
                        out.push_back(std::move(v));
                        guard(static_cast<long long>(out.size()));
                        return;
                    }
                    rec(i + 1);
                    for (const auto& c : chosen)
                        if (detail::subset_of(c, subsets[i]) || detail::subset_of(subsets[i], c))
                            return;
                    chosen.push_back(subsets[i]);
                    rec(i + 1);
                    chosen.pop_back();
                };
                rec(0);
                std::sort(out.begin(), out.end());
                break;
            }
            case EffectKind::Writer:
                guard(static_cast<long long>(monoid.size) * n);
                for (int m = 0; m < monoid.size; ++m)
                    for (const auto& x : domain) {
                        Value<X> v;
                        v.kind = kind;
                        v.tag = m;
                        v.elems = {x};
                        out.push_back(std::move(v));
                    }
                break;
        }
        return out;
    }
};

// A T-algebra structure on the finite output carrier O = {0, .., size-1}.
// The structure map is determined by the effect kind plus the flags below.
struct OutputAlgebra {
    int size = 2;
    bool conjunctive = false;  // Powerset: meet instead of join
    int reject = 0;            // Maybe: output of the sink state
    Semiring ring;             // FreeSemimodule: O is the scalar carrier
    Monoid monoid;             // Writer: O is the monoid, acting on itself

    static OutputAlgebra bool_or() { return {2, false, 0, {}, {}}; }
    static OutputAlgebra bool_and() { return {2, true, 0, {}, {}}; }
    static OutputAlgebra moore(int outputs) { return {outputs, false, 0, {}, {}}; }
    static OutputAlgebra field(Semiring s) {
        OutputAlgebra a;
        a.size = s.size;
        a.ring = std::move(s);
        return a;
    }
    static OutputAlgebra maybe() { return {2, false, 0, {}, {}}; }
    static OutputAlgebra dnf() { return {2, false, 0, {}, {}}; }
    static OutputAlgebra action(Monoid m) {
        OutputAlgebra a;
        a.size = m.size;
        a.monoid = std::move(m);
        return a;
    }
};

// Structure map alpha: T(O) -> O.
inline int apply_algebra(const Effect& effect, const OutputAlgebra& alg, const Value<int>& v) {
    switch (effect.kind) {
        case EffectKind::Identity:
            return v.elems[0];
        case EffectKind::Powerset: {
            if (alg.conjunctive) {
                int acc = 1;  // empty meet is top
                for (int o : v.elems) acc = acc && o;
                return acc;
            }
            int acc = 0;
            for (int o : v.elems) acc = acc || o;
            return acc;
        }
        case EffectKind::FreeSemimodule: {
            int acc = alg.ring.zero;
            for (std::size_t i = 0; i < v.elems.size(); ++i)
                acc = alg.ring.add(acc, alg.ring.mul(v.coeffs[i], v.elems[i]));
            return acc;
        }
        case EffectKind::Maybe:
            return v.present ? v.elems[0] : alg.reject;
        case EffectKind::Upset:
            for (const auto& clause : v.clauses) {
                bool all = true;
                for (int o : clause) all = all && o;
                if (all) return 1;
            }
            return 0;
        case EffectKind::Writer:
            return alg.monoid.mul(v.tag, v.elems[0]);
    }
    throw std::logic_error("unreachable");
}

// The free T-extension of f: X -> O as a function on effect values.
template <typename X, typename F>
int extend_to_output(const Effect& effect, const OutputAlgebra& alg, F&& f, const Value<X>& v) {
    return apply_algebra(effect, alg, effect.map([&](const X& x) { return f(x); }, v));
}

// --- textual form, shared with the automaton file format -------------------

template <typename X, typename NameOf>
std::string value_to_string(const Effect& effect, const Value<X>& v, NameOf&& name) {
    std::ostringstream os;
    switch (effect.kind) {
        case EffectKind::Identity:
            os << name(v.elems[0]);
            break;
        case EffectKind::Powerset: {
            os << '{';
            for (std::size_t i = 0; i < v.elems.size(); ++i)
                os << (i ? "," : "") << name(v.elems[i]);
            os << '}';
            break;
        }
        case EffectKind::FreeSemimodule: {
            os << '{';
            for (std::size_t i = 0; i < v.elems.size(); ++i)
                os << (i ? "," : "") << name(v.elems[i]) << ':' << v.coeffs[i];
            os << '}';
            break;
        }
        case EffectKind::Maybe:
            if (v.present)
                os << "some " << name(v.elems[0]);
            else
                os << "none";
            break;
        case EffectKind::Upset: {
            os << '[';
            for (std::size_t i = 0; i < v.clauses.size(); ++i) {
                os << (i ? ",{" : "{");
                for (std::size_t j = 0; j < v.clauses[i].size(); ++j)
                    os << (j ? "," : "") << name(v.clauses[i][j]);
                os << '}';
            }
            os << ']';
            break;
        }
        case EffectKind::Writer:
            os << '(' << v.tag << ',' << name(v.elems[0]) << ')';
            break;
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == ',') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

}  // namespace detail

// Parses the canonical textual form over string-named elements.
inline Value<std::string> value_from_string(const Effect& effect, const std::string& text) {
    Value<std::string> v;
    v.kind = effect.kind;
    auto fail = [&] { throw std::runtime_error("bad effect value: " + text); };
    switch (effect.kind) {
        case EffectKind::Identity:
            if (text.empty()) fail();
            v.elems = {text};
            break;
        case EffectKind::Powerset: {
            if (text.size() < 2 || text.front() != '{' || text.back() != '}') fail();
            v.elems = detail::split_commas(text.substr(1, text.size() - 2));
            detail::sort_unique(v.elems);
            break;
        }
        case EffectKind::FreeSemimodule: {
            if (text.size() < 2 || text.front() != '{' || text.back() != '}') fail();
            std::map<std::string, int> acc;
            for (const auto& part : detail::split_commas(text.substr(1, text.size() - 2))) {
                auto colon = part.find(':');
                if (colon == std::string::npos) fail();
                int c = std::stoi(part.substr(colon + 1)) % effect.ring.size;
                if (c < 0) c += effect.ring.size;
                int& slot = acc.try_emplace(part.substr(0, colon), effect.ring.zero).first->second;
                slot = effect.ring.add(slot, c);
            }
            for (const auto& [k, c] : acc)
                if (c != effect.ring.zero) {
                    v.elems.push_back(k);
                    v.coeffs.push_back(c);
                }
            break;
        }
        case EffectKind::Maybe:
            if (text == "none") {
                v.present = false;
            } else if (text.rfind("some ", 0) == 0) {
                v.elems = {text.substr(5)};
            } else {
                fail();
            }
            break;
        case EffectKind::Upset: {
            if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail();
            std::string body = text.substr(1, text.size() - 2);
            std::size_t i = 0;
            while (i < body.size()) {
                if (body[i] != '{') fail();
                auto close = body.find('}', i);
                if (close == std::string::npos) fail();
                v.clauses.push_back(detail::split_commas(body.substr(i + 1, close - i - 1)));
                i = close + 1;
                if (i < body.size() && body[i] == ',') ++i;
            }
            detail::minimize_antichain(v.clauses);
            break;
        }
        case EffectKind::Writer: {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')') fail();
            auto comma = text.find(',');
            if (comma == std::string::npos) fail();
            v.tag = std::stoi(text.substr(1, comma - 1));
            if (v.tag < 0 || v.tag >= effect.monoid.size) fail();
            v.elems = {text.substr(comma + 1, text.size() - comma - 2)};
            break;
        }
    }
    return v;
}

// Relabels a value's elements.
template <typename X, typename F>
auto relabel(const Effect& effect, const Value<X>& v, F&& f)
    -> Value<std::decay_t<decltype(f(std::declval<const X&>()))>> {
    return effect.map([&](const X& x) { return f(x); }, v);
}

}  // namespace lstar
