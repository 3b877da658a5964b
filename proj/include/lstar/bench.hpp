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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "lstar/analysis.hpp"
#include "lstar/generators.hpp"
#include "lstar/learner.hpp"

namespace lstar {

enum class TargetKind { Moore, TvNfa, Wfa };

struct VariantSpec {
    std::string name;
    std::string effect_name;       // learner's effect, not the target's
    int moore_outputs = 2;         // identity learners only
    LearnerConfig config;
};

struct ExperimentGrid {
    TargetKind target = TargetKind::Moore;
    int alphabet_size = 3;
    double density = 1.25;  // TvNfa
    int field_size = 5;     // Wfa
    int outputs = 2;        // Moore target outputs
    std::vector<VariantSpec> variants;
    std::vector<int> sizes;
    int iterations = 100;
    std::uint64_t seed = 0;
    long long bisim_max_pairs = 1'000'000;
    int jobs = 1;
};

struct ResultRow {
    std::string effect;
    std::string variant;
    int size = 0;
    std::uint64_t seed = 0;
    long long mq = 0;
    long long eq = 0;
    long long rounds = 0;
    int learned_states = 0;  // -1 flags a failed run
    long long wall_ms = 0;
};

struct AggregateRow {
    std::string effect;
    std::string variant;
    int size = 0;
    double mq_mean = 0, mq_sd = 0, eq_mean = 0, eq_sd = 0;
};

inline SuccinctAutomaton generate_target(const ExperimentGrid& grid, int size, Rng& rng) {
    switch (grid.target) {
        case TargetKind::Moore:
            return gen_moore(size, grid.alphabet_size, grid.outputs, rng);
        case TargetKind::TvNfa:
            return gen_tabakov_vardi_nfa(size, grid.alphabet_size, grid.density, rng);
        case TargetKind::Wfa:
            return gen_wfa(size, grid.alphabet_size, grid.field_size, rng);
    }
    throw std::logic_error("unreachable");
}

// Runs every variant on identical targets: the target for (size, iteration)
// is derived from a split RNG stream independent of the variant.
inline std::vector<ResultRow> run_experiment(const ExperimentGrid& grid) {
    struct Cell {
        int size_idx, iter;
    };
    std::vector<Cell> cells;
    for (std::size_t si = 0; si < grid.sizes.size(); ++si)
        for (int it = 0; it < grid.iterations; ++it)
            cells.push_back({static_cast<int>(si), it});

    std::vector<ResultRow> rows(cells.size() * grid.variants.size());
    auto run_cell = [&](std::size_t ci) {
        const Cell& cell = cells[ci];
        int size = grid.sizes[cell.size_idx];
        std::uint64_t cell_seed = Rng::split(grid.seed, static_cast<std::uint64_t>(size),
                                             static_cast<std::uint64_t>(cell.iter));
        Rng rng(cell_seed);
        SuccinctAutomaton target = generate_target(grid, size, rng);
        for (std::size_t vi = 0; vi < grid.variants.size(); ++vi) {
            const VariantSpec& variant = grid.variants[vi];
            ResultRow& row = rows[ci * grid.variants.size() + vi];
            row.effect = variant.effect_name;
            row.variant = variant.name;
            row.size = size;
            row.seed = cell_seed;
            auto start = std::chrono::steady_clock::now();
            try {
                auto teacher =
                    std::make_shared<ExactTeacher>(target, grid.bisim_max_pairs);
                EffectSpec spec = make_effect_spec(variant.effect_name, variant.moore_outputs);
                auto [hyp, stats] =
                    lstar_t(teacher, variant.config, spec.effect, spec.alg, spec.name);
                row.mq = stats.mq;
                row.eq = stats.eq;
                row.rounds = stats.rounds;
                row.learned_states = hyp.aut.num_states();
            } catch (const std::exception&) {
                row.learned_states = -1;
            }
            row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        }
    };

    int jobs = std::max(1, grid.jobs);
    if (jobs == 1) {
        for (std::size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (std::size_t ci = w; ci < cells.size(); ci += jobs) run_cell(ci);
            });
        for (auto& t : workers) t.join();
    }
    return rows;
}

inline std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
    // Keyed by (variant order of first appearance, size); failed rows are
    // excluded from the statistics.
    std::vector<AggregateRow> out;
    auto find = [&](const ResultRow& r) -> AggregateRow& {
        for (auto& a : out)
            if (a.variant == r.variant && a.size == r.size) return a;
        out.push_back({r.effect, r.variant, r.size, 0, 0, 0, 0});
        return out.back();
    };
    std::map<std::pair<std::string, int>, std::vector<const ResultRow*>> groups;
    for (const auto& r : rows) {
        find(r);
        if (r.learned_states >= 0) groups[{r.variant, r.size}].push_back(&r);
    }
    auto mean_sd = [](const std::vector<double>& xs) {
        double mean = 0;
        for (double x : xs) mean += x;
        if (!xs.empty()) mean /= static_cast<double>(xs.size());
        double var = 0;
        for (double x : xs) var += (x - mean) * (x - mean);
        double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
        return std::make_pair(mean, sd);
    };
    for (auto& a : out) {
        std::vector<double> mqs, eqs;
        for (const ResultRow* r : groups[{a.variant, a.size}]) {
            mqs.push_back(static_cast<double>(r->mq));
            eqs.push_back(static_cast<double>(r->eq));
        }
        std::tie(a.mq_mean, a.mq_sd) = mean_sd(mqs);
        std::tie(a.eq_mean, a.eq_sd) = mean_sd(eqs);
    }
    return out;
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << "effect,variant,size,seed,mq,eq,rounds,learned_states,wall_ms\n";
    for (const auto& r : rows)
        os << r.effect << ',' << r.variant << ',' << r.size << ',' << r.seed << ',' << r.mq
           << ',' << r.eq << ',' << r.rounds << ',' << r.learned_states << ',' << r.wall_ms
           << '\n';
}

inline void write_aggregate_csv(const std::vector<AggregateRow>& aggs, std::ostream& os) {
    os << "effect,variant,size,mq_mean,mq_sd,eq_mean,eq_sd\n";
    for (const auto& a : aggs)
        os << a.effect << ',' << a.variant << ',' << a.size << ',' << format_double(a.mq_mean)
           << ',' << format_double(a.mq_sd) << ',' << format_double(a.eq_mean) << ','
           << format_double(a.eq_sd) << '\n';
}

// Gnuplot-style series: one line per size, "size mean sd".
inline void write_series(const std::vector<AggregateRow>& aggs, const std::string& variant,
                         bool eq_metric, std::ostream& os) {
    for (const auto& a : aggs)
        if (a.variant == variant)
            os << a.size << ' ' << format_double(eq_metric ? a.eq_mean : a.mq_mean) << ' '
               << format_double(eq_metric ? a.eq_sd : a.mq_sd) << '\n';
}

// --- canned suites mirroring the benchmark studies --------------------------

inline LearnerConfig variant_config(const std::string& effect_name, CeMethod ce,
                                    ConsistencyMode consistency, RightInverse inverse,
                                    int moore_outputs = 2) {
    EffectSpec spec = make_effect_spec(effect_name, moore_outputs);
    LearnerConfig c = default_config(spec.effect, spec.alg);
    c.ce = ce;
    c.consistency = consistency;
    c.inverse = inverse;
    return c;
}

inline ExperimentGrid make_suite(const std::string& name) {
    using CM = ConsistencyMode;
    using CE = CeMethod;
    using RI = RightInverse;
    ExperimentGrid g;
    if (name == "nfa-table2") {
        g.target = TargetKind::TvNfa;
        g.sizes = {4, 8};
        g.variants = {
            {"lstar", "identity", 2, variant_config("identity", CE::Angluin, CM::Full, RI::Stored)},
            {"nlstar-mp", "powerset", 2,
             variant_config("powerset", CE::MP, CM::BolligRfsa, RI::MaxJsl)},
            {"nlstar-rs", "powerset", 2,
             variant_config("powerset", CE::RS, CM::BolligRfsa, RI::MaxJsl)},
        };
    } else if (name == "wfa-table1") {
        g.target = TargetKind::Wfa;
        g.sizes = {1, 2, 3, 4};
        g.variants = {
            {"lstar-moore", "identity", 5,
             variant_config("identity", CE::Angluin, CM::Full, RI::Stored, 5)},
            {"lstarv", "semimodule:5", 2,
             variant_config("semimodule:5", CE::Angluin, CM::Transpose, RI::Stored)},
        };
    } else if (name == "dfa-fig6") {
        g.target = TargetKind::Moore;
        g.outputs = 2;
        g.sizes = {20, 40, 60};
        g.variants = {
            {"angluin", "identity", 2,
             variant_config("identity", CE::Angluin, CM::Full, RI::Stored)},
            {"mp", "identity", 2, variant_config("identity", CE::MP, CM::None, RI::Stored)},
            {"rs", "identity", 2, variant_config("identity", CE::RS, CM::None, RI::Stored)},
        };
    } else if (name == "moore-fig7") {
        g.target = TargetKind::Moore;
        g.outputs = 5;
        g.sizes = {5, 10, 15, 20};
        g.variants = {
            {"lstar", "identity", 5,
             variant_config("identity", CE::Angluin, CM::Full, RI::Stored, 5)},
            {"lstarv-angluin", "semimodule:5", 2,
             variant_config("semimodule:5", CE::Angluin, CM::Transpose, RI::Stored)},
            {"lstarv-mp", "semimodule:5", 2,
             variant_config("semimodule:5", CE::MP, CM::Transpose, RI::Stored)},
            {"lstarv-rs", "semimodule:5", 2,
             variant_config("semimodule:5", CE::RS, CM::Transpose, RI::Stored)},
        };
    } else if (name == "wfa-fig8") {
        g.target = TargetKind::Wfa;
        g.sizes = {5, 8, 10};
        g.variants = {
            {"lstarv-angluin", "semimodule:5", 2,
             variant_config("semimodule:5", CE::Angluin, CM::Transpose, RI::Stored)},
            {"lstarv-mp", "semimodule:5", 2,
             variant_config("semimodule:5", CE::MP, CM::Transpose, RI::Stored)},
            {"lstarv-rs", "semimodule:5", 2,
             variant_config("semimodule:5", CE::RS, CM::Transpose, RI::Stored)},
        };
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    return g;
}

}  // namespace lstar
