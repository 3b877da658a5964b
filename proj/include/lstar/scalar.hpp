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

#include <cassert>
#include <stdexcept>
#include <vector>

namespace lstar {

// Finite semiring with carrier {0, .., size-1}. Table-driven so that scalar
// structures other than GF(p) can be plugged in; GF(p) is the shipped family.
struct Semiring {
    int size = 0;
    int zero = 0;
    int one = 1;
    std::vector<int> add_table;  // size*size, row-major
    std::vector<int> mul_table;
    std::vector<int> inv_table;  // multiplicative inverses; empty if not a field

    int add(int a, int b) const { return add_table[a * size + b]; }
    int mul(int a, int b) const { return mul_table[a * size + b]; }
    bool is_field() const { return !inv_table.empty(); }
    int inv(int a) const {
        assert(is_field() && a != zero);
        return inv_table[a];
    }
    int neg(int a) const {
        // additive inverse, required by Gaussian elimination (fields only)
        for (int b = 0; b < size; ++b)
            if (add(a, b) == zero) return b;
        throw std::logic_error("semiring element has no additive inverse");
    }

    // Galois field of prime order p.
    static Semiring gf(int p) {
        if (p < 2) throw std::invalid_argument("field size must be >= 2");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("field size must be prime");
        Semiring s;
        s.size = p;
        s.zero = 0;
        s.one = 1 % p;
        s.add_table.resize(p * p);
        s.mul_table.resize(p * p);
        s.inv_table.assign(p, 0);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                s.add_table[a * p + b] = (a + b) % p;
                s.mul_table[a * p + b] = (a * b) % p;
                if ((a * b) % p == 1 % p) s.inv_table[a] = b;
            }
        return s;
    }
};

// Finite monoid with carrier {0, .., size-1} and unit 0.
struct Monoid {
    int size = 0;
    int unit = 0;
    std::vector<int> mul_table;

    int mul(int a, int b) const { return mul_table[a * size + b]; }

    // Cyclic group Z_n under addition.
    static Monoid cyclic(int n) {
        if (n < 1) throw std::invalid_argument("monoid size must be >= 1");
        Monoid m;
        m.size = n;
        m.unit = 0;
        m.mul_table.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m.mul_table[a * n + b] = (a + b) % n;
        return m;
    }
};

}  // namespace lstar
