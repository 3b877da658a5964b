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

#include <cstdint>

namespace lstar {

// Deterministic RNG with platform-independent output. std::uniform_*
// distributions are implementation-defined, so all draws go through the
// helpers below.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is negligible for the small n used here.
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Derives an independent stream, so that e.g. every (size, iteration)
    // cell of an experiment grid sees its own deterministic sequence.
    static std::uint64_t split(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        Rng r(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
        r.next();
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace lstar
