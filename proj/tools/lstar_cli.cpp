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

// Command-line driver: learn a model from an automaton file, run benchmark
// grids, or generate random targets. Exit codes: 0 success, 2 parse error,
// 3 configuration conflict, 4 enumeration-cap abort.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "lstar/bench.hpp"

namespace {

using namespace lstar;

// "4,8" or "1..4".
std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        for (int n = lo; n <= hi; ++n) sizes.push_back(n);
        return sizes;
    }
    for (const auto& part : detail::split_commas(text)) sizes.push_back(std::stoi(part));
    return sizes;
}

std::shared_ptr<Teacher> make_teacher(const std::string& spec, SuccinctAutomaton target,
                                      std::uint64_t seed, long long max_pairs) {
    if (spec == "exact") return std::make_shared<ExactTeacher>(std::move(target), max_pairs);
    if (spec.rfind("random:", 0) == 0)
        return std::make_shared<RandomTeacher>(std::move(target), std::stoi(spec.substr(7)),
                                               seed);
    if (spec.rfind("pac:", 0) == 0) {
        auto rest = spec.substr(4);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw config_error("pac teacher needs pac:<eps>:<delta>");
        return std::make_shared<PacTeacher>(std::move(target), std::stod(rest.substr(0, colon)),
                                            std::stod(rest.substr(colon + 1)), seed);
    }
    throw config_error("unknown teacher: " + spec);
}

CeMethod parse_ce(const std::string& s) {
    if (s == "angluin") return CeMethod::Angluin;
    if (s == "mp") return CeMethod::MP;
    if (s == "rs") return CeMethod::RS;
    throw config_error("unknown counterexample method: " + s);
}

ConsistencyMode parse_consistency(const std::string& s) {
    if (s == "full") return ConsistencyMode::Full;
    if (s == "transpose") return ConsistencyMode::Transpose;
    if (s == "bollig") return ConsistencyMode::BolligRfsa;
    if (s == "none") return ConsistencyMode::None;
    throw config_error("unknown consistency mode: " + s);
}

RightInverse parse_inverse(const std::string& s) {
    if (s == "stored") return RightInverse::Stored;
    if (s == "i1") return RightInverse::MaxJsl;
    if (s == "i2") return RightInverse::SimplifiedJsl;
    throw config_error("unknown right inverse: " + s);
}

SuccinctAutomaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_automaton(in);
}

struct LearnFlags {
    std::string target, effect, ce, consistency, inverse = "stored";
    std::string teacher = "exact", out, trace;
    std::uint64_t seed = 0;
    long long max_pairs = 1'000'000;
};

int cmd_learn(const LearnFlags& f) {
    SuccinctAutomaton target = load_automaton(f.target);
    std::string effect_name = f.effect.empty() ? target.effect_name : f.effect;
    int outputs = target.alg.size;
    EffectSpec spec = make_effect_spec(effect_name, outputs);
    if (spec.alg.size != target.alg.size)
        throw config_error("learner and target output carriers disagree");

    LearnerConfig config = default_config(spec.effect, spec.alg);
    if (!f.ce.empty()) config.ce = parse_ce(f.ce);
    if (!f.consistency.empty()) config.consistency = parse_consistency(f.consistency);
    config.inverse = parse_inverse(f.inverse);
    config.bisim_max_pairs = f.max_pairs;

    std::ofstream trace_file;
    if (!f.trace.empty()) {
        trace_file.open(f.trace);
        if (!trace_file) throw std::runtime_error("cannot open " + f.trace);
        config.trace = &trace_file;
    }

    auto teacher = make_teacher(f.teacher, std::move(target), f.seed, f.max_pairs);
    auto start = std::chrono::steady_clock::now();
    auto [hyp, stats] = lstar_t(teacher, config, spec.effect, spec.alg, spec.name);
    stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

    std::cout << "mq=" << stats.mq << " eq=" << stats.eq << " rounds=" << stats.rounds
              << " states=" << hyp.aut.num_states() << " generators=" << stats.final_generators
              << " wall_ms=" << stats.wall_ms << '\n';
    if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw std::runtime_error("cannot open " + f.out);
        serialize(hyp.aut, out);
    } else {
        serialize(hyp.aut, std::cout);
    }
    return 0;
}

struct BenchFlags {
    std::string suite, sizes, out = "bench";
    int iters = 0, jobs = 1;
    std::uint64_t seed = 0;
};

int cmd_bench(const BenchFlags& f) {
    ExperimentGrid grid = make_suite(f.suite);
    if (!f.sizes.empty()) grid.sizes = parse_sizes(f.sizes);
    if (f.iters > 0) grid.iterations = f.iters;
    grid.seed = f.seed;
    grid.jobs = f.jobs;

    auto rows = run_experiment(grid);
    auto aggs = aggregate(rows);

    {
        std::ofstream csv(f.out + ".csv");
        write_csv(rows, csv);
        std::ofstream agg(f.out + "_agg.csv");
        write_aggregate_csv(aggs, agg);
        for (const auto& variant : grid.variants)
            for (bool eq_metric : {false, true}) {
                std::ofstream series(f.out + "_" + variant.name +
                                     (eq_metric ? "_eq.dat" : "_mq.dat"));
                write_series(aggs, variant.name, eq_metric, series);
            }
    }

    // Console table, MQ means rounded to whole numbers, EQs to two decimals.
    std::cout << "variant size mq eq\n";
    for (const auto& a : aggs) {
        char eq[32];
        std::snprintf(eq, sizeof eq, "%.2f", a.eq_mean);
        std::cout << a.variant << ' ' << a.size << ' '
                  << static_cast<long long>(std::llround(a.mq_mean)) << ' ' << eq << '\n';
    }
    long long fails = 0;
    for (const auto& r : rows)
        if (r.learned_states < 0) ++fails;
    if (fails) {
        std::cerr << fails << " runs failed\n";
        return 4;
    }
    return 0;
}

struct GenerateFlags {
    std::string kind, out;
    int n = 0, k = 3, field = 5, outputs = 2;
    double density = 1.25;
    std::uint64_t seed = 0;
};

int cmd_generate(const GenerateFlags& f) {
    Rng rng(f.seed);
    SuccinctAutomaton aut = [&] {
        if (f.kind == "moore") return gen_moore(f.n, f.k, f.outputs, rng);
        if (f.kind == "tv-nfa") return gen_tabakov_vardi_nfa(f.n, f.k, f.density, rng);
        if (f.kind == "wfa") return gen_wfa(f.n, f.k, f.field, rng);
        throw config_error("unknown kind: " + f.kind);
    }();
    if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw std::runtime_error("cannot open " + f.out);
        serialize(aut, out);
    } else {
        serialize(aut, std::cout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active learning of automata with side-effects"};
    app.require_subcommand(1);

    LearnFlags lf;
    auto* learn = app.add_subcommand("learn", "learn a model of a target automaton");
    learn->add_option("--target", lf.target, "target automaton file")->required();
    learn->add_option("--effect", lf.effect, "learner effect (default: target's)");
    learn->add_option("--ce", lf.ce, "counterexample handling: angluin|mp|rs");
    learn->add_option("--consistency", lf.consistency, "full|transpose|bollig|none");
    learn->add_option("--inverse", lf.inverse, "stored|i1|i2");
    learn->add_option("--teacher", lf.teacher, "exact|random:<n>|pac:<eps>:<delta>");
    learn->add_option("--seed", lf.seed, "teacher sampling seed");
    learn->add_option("--out", lf.out, "write learned automaton here");
    learn->add_option("--trace", lf.trace, "dump observation tables here");
    learn->add_option("--max-pairs", lf.max_pairs, "bisimulation pair cap");

    BenchFlags bf;
    auto* bench = app.add_subcommand("bench", "run a benchmark grid");
    bench->add_option("--suite", bf.suite, "nfa-table2|wfa-table1|dfa-fig6|moore-fig7|wfa-fig8")
        ->required();
    bench->add_option("--sizes", bf.sizes, "override sizes, e.g. 4,8 or 1..4");
    bench->add_option("--iters", bf.iters, "iterations per size");
    bench->add_option("--seed", bf.seed, "master seed");
    bench->add_option("--out", bf.out, "output file prefix");
    bench->add_option("--jobs", bf.jobs, "parallel workers");

    GenerateFlags gf;
    auto* generate = app.add_subcommand("generate", "generate a random automaton");
    generate->add_option("--kind", gf.kind, "moore|tv-nfa|wfa")->required();
    generate->add_option("--n", gf.n, "number of states")->required();
    generate->add_option("--k", gf.k, "alphabet size");
    generate->add_option("--density", gf.density, "transition density (tv-nfa)");
    generate->add_option("--field", gf.field, "field size (wfa)");
    generate->add_option("--outputs", gf.outputs, "output count (moore)");
    generate->add_option("--seed", gf.seed, "generation seed");
    generate->add_option("--out", gf.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (learn->parsed()) return cmd_learn(lf);
        if (bench->parsed()) return cmd_bench(bf);
        return cmd_generate(gf);
    } catch (const lstar::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const lstar::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
