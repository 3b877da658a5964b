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
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lstar/teacher.hpp"

namespace lstar {

// How a row is expressed as an effectful combination of the rows of S.
enum class DecomposeStrategy {
    Enumerate,      // brute force over T(S), any effect, capped
    JslJoin,        // Powerset/or: union of all dominated rows
    MeetDual,       // Powerset/and: intersection of all dominating rows
    GaussianField,  // FreeSemimodule over a field: linear solve
    DnfY,           // Upset: canonical monotone-DNF candidate
    WriterScan,     // Writer: scan monoid element x generator
    MaybeScan,      // Maybe: all-reject row is the absent value
};

enum class ConsistencyMode { Full, Transpose, BolligRfsa, None };

inline bool row_leq(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Observation table over prefixes S (plus the boundary S.A) and suffixes E.
// The cell map is the single source of truth; every derived row is recomputed
// from it on demand.
class ObservationTable {
public:
    ObservationTable(Effect effect, OutputAlgebra alg, Teacher* teacher)
        : effect_(std::move(effect)),
          alg_(std::move(alg)),
          teacher_(teacher),
          alphabet_(teacher->alphabet()) {
        s_.push_back("");
        e_.push_back("");
    }

    const Effect& effect() const { return effect_; }
    const OutputAlgebra& alg() const { return alg_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& prefixes() const { return s_; }
    const std::vector<Word>& suffixes() const { return e_; }

    bool has_prefix(const Word& w) const {
        return std::find(s_.begin(), s_.end(), w) != s_.end();
    }
    bool has_suffix(const Word& w) const {
        return std::find(e_.begin(), e_.end(), w) != e_.end();
    }

    void add_prefix(const Word& w) {
        if (!has_prefix(w)) s_.push_back(w);
    }
    // Adds w together with all its prefixes, keeping S prefix-closed.
    void add_prefixes_of(const Word& w) {
        for (std::size_t n = 0; n <= w.size(); ++n) add_prefix(w.substr(0, n));
    }
    void add_suffix(const Word& w) {
        if (!has_suffix(w)) e_.push_back(w);
    }

    // Queries every missing cell; returns the number of queries issued.
    // Also maintains the derived row cache (rows are in E-order).
    long long fill() {
        long long queries = 0;
        auto need = [&](const Word& label) {
            auto& cell_row = cells_[label];
            auto& cached = rows_[label];
            for (const Word& e : e_)
                if (!cell_row.count(e)) {
                    int v = teacher_->membership(label + e);
                    cell_row.emplace(e, v);
                    ++queries;
                }
            if (cached.size() < e_.size())
                for (std::size_t ei = cached.size(); ei < e_.size(); ++ei)
                    cached.push_back(cell_row.at(e_[ei]));
        };
        for (const Word& s : s_) {
            need(s);
            for (Symbol a : alphabet_) need(s + a);
        }
        return queries;
    }

    int cell(const Word& label, const Word& e) const { return cells_.at(label).at(e); }

    // Row over the E-order (cached; cells remain the source of truth).
    const std::vector<int>& row(const Word& label) const { return rows_.at(label); }

    // Free extension of the top rows: the row of an effect value over S
    // indices, one output per suffix.
    std::vector<int> row_ext(const Value<int>& ctx) const {
        std::vector<int> r;
        r.reserve(e_.size());
        for (const Word& e : e_)
            r.push_back(
                extend_to_output(effect_, alg_, [&](int i) { return cell(s_[i], e); }, ctx));
        return r;
    }

    // Same, but over the boundary rows S.a.
    std::vector<int> row_ext_bottom(const Value<int>& ctx, Symbol a) const {
        std::vector<int> r;
        r.reserve(e_.size());
        for (const Word& e : e_)
            r.push_back(extend_to_output(
                effect_, alg_, [&](int i) { return cell(s_[i] + a, e); }, ctx));
        return r;
    }

    // --- decomposition ------------------------------------------------------

    // Expresses the target row as row_ext(ctx) for some ctx in T(S indices),
    // restricted to the given generator indices. Returns nullopt if no
    // decomposition exists (a closedness defect).
    std::optional<Value<int>> decompose(const std::vector<int>& target,
                                        DecomposeStrategy strategy,
                                        const std::vector<int>& generators,
                                        const EnumCaps& caps = {}) const {
        switch (strategy) {
            case DecomposeStrategy::Enumerate: {
                if (effect_.kind == EffectKind::Identity) {
                    // Unit contexts only: a linear scan over cached rows.
                    for (int i : generators)
                        if (row(s_[i]) == target) return effect_.unit(i);
                    return std::nullopt;
                }
                for (const auto& ctx : effect_.enumerate(generators, caps))
                    if (row_ext(ctx) == target) return ctx;
                return std::nullopt;
            }
            case DecomposeStrategy::JslJoin: {
                // The union of dominated rows is the only candidate join.
                Value<int> v;
                v.kind = EffectKind::Powerset;
                for (int i : generators)
                    if (row_leq(row(s_[i]), target)) v.elems.push_back(i);
                if (row_ext(v) == target) return v;
                return std::nullopt;
            }
            case DecomposeStrategy::MeetDual: {
                Value<int> v;
                v.kind = EffectKind::Powerset;
                for (int i : generators)
                    if (row_leq(target, row(s_[i]))) v.elems.push_back(i);
                if (row_ext(v) == target) return v;
                return std::nullopt;
            }
            case DecomposeStrategy::GaussianField:
                return solve_field(target, generators);
            case DecomposeStrategy::DnfY: {
                // Canonical candidate: one clause per accepted suffix,
                // holding the generators observed to accept it.
                Value<int> v;
                v.kind = EffectKind::Upset;
                for (std::size_t ei = 0; ei < e_.size(); ++ei) {
                    if (target[ei] != 1) continue;
                    std::vector<int> clause;
                    for (int i : generators)
                        if (cell(s_[i], e_[ei]) == 1) clause.push_back(i);
                    v.clauses.push_back(std::move(clause));
                }
                detail::minimize_antichain(v.clauses);
                if (row_ext(v) == target) return v;
                return std::nullopt;
            }
            case DecomposeStrategy::WriterScan: {
                for (int m = 0; m < effect_.monoid.size; ++m)
                    for (int i : generators) {
                        Value<int> v;
                        v.kind = EffectKind::Writer;
                        v.tag = m;
                        v.elems = {i};
                        if (row_ext(v) == target) return v;
                    }
                return std::nullopt;
            }
            case DecomposeStrategy::MaybeScan: {
                for (int i : generators) {
                    Value<int> v = effect_.unit(i);
                    if (row(s_[i]) == target) return v;
                }
                Value<int> absent = effect_.zero<int>();
                if (row_ext(absent) == target) return absent;
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    std::optional<Value<int>> decompose(const std::vector<int>& target,
                                        DecomposeStrategy strategy,
                                        const EnumCaps& caps = {}) const {
        return decompose(target, strategy, all_indices(), caps);
    }

    // First boundary row with no decomposition, scanning prefixes in S order
    // and symbols in alphabet order.
    std::optional<std::pair<Word, Symbol>> closedness_defect(DecomposeStrategy strategy,
                                                             const EnumCaps& caps = {}) const {
        if (strategy == DecomposeStrategy::Enumerate &&
            effect_.kind == EffectKind::Identity) {
            // Deterministic case: a boundary row decomposes iff it already
            // appears among the top rows.
            std::set<std::vector<int>> tops;
            for (const Word& s : s_) tops.insert(row(s));
            for (const Word& s : s_)
                for (Symbol a : alphabet_)
                    if (!tops.count(row(s + a))) return std::make_pair(s, a);
            return std::nullopt;
        }
        for (const Word& s : s_)
            for (Symbol a : alphabet_)
                if (!decompose(row(s + a), strategy, caps)) return std::make_pair(s, a);
        return std::nullopt;
    }

    // --- consistency --------------------------------------------------------

    // Returns a suffix a.e whose addition separates two combinations that
    // currently look equal, or nullopt if the table is consistent for the
    // selected mode.
    std::optional<Word> consistency_defect(ConsistencyMode mode,
                                           const EnumCaps& caps = {}) const {
        switch (mode) {
            case ConsistencyMode::None:
                return std::nullopt;
            case ConsistencyMode::Full:
                return consistency_full(caps);
            case ConsistencyMode::Transpose:
                return consistency_transpose(caps);
            case ConsistencyMode::BolligRfsa:
                return consistency_bollig();
        }
        return std::nullopt;
    }

    // --- rendering ----------------------------------------------------------

    // Aligned text dump: suffix columns in insertion order, prefix rows in
    // shortlex order, boundary rows below a separator. The empty word prints
    // as "-".
    void dump(std::ostream& os) const {
        auto show = [](const Word& w) { return w.empty() ? std::string("-") : w; };
        std::vector<Word> top = s_;
        std::sort(top.begin(), top.end(), shortlex_less);
        std::vector<Word> bottom;
        for (const Word& s : s_)
            for (Symbol a : alphabet_)
                if (!has_prefix(s + a)) bottom.push_back(s + a);
        std::sort(bottom.begin(), bottom.end(), shortlex_less);
        bottom.erase(std::unique(bottom.begin(), bottom.end()), bottom.end());

        std::size_t label_w = 1;
        for (const Word& w : top) label_w = std::max(label_w, show(w).size());
        for (const Word& w : bottom) label_w = std::max(label_w, show(w).size());
        std::vector<std::size_t> col_w;
        for (const Word& e : e_) col_w.push_back(std::max<std::size_t>(1, show(e).size()));

        auto line = [&](const std::string& label, const std::vector<std::string>& vals) {
            os << std::left << std::setw(static_cast<int>(label_w)) << label;
            for (std::size_t i = 0; i < vals.size(); ++i)
                os << ' ' << std::right << std::setw(static_cast<int>(col_w[i])) << vals[i];
            os << '\n';
        };
        std::vector<std::string> header;
        for (const Word& e : e_) header.push_back(show(e));
        line("", header);
        auto row_line = [&](const Word& w) {
            std::vector<std::string> vals;
            for (const Word& e : e_) vals.push_back(std::to_string(cell(w, e)));
            line(show(w), vals);
        };
        for (const Word& w : top) row_line(w);
        os << std::string(label_w, '-') << '\n';
        for (const Word& w : bottom) row_line(w);
    }

private:
    std::vector<int> all_indices() const {
        std::vector<int> idx(s_.size());
        for (std::size_t i = 0; i < s_.size(); ++i) idx[i] = static_cast<int>(i);
        return idx;
    }

    std::optional<Value<int>> solve_field(const std::vector<int>& target,
                                          const std::vector<int>& generators) const {
        const Semiring& f = effect_.ring;
        const int rows = static_cast<int>(e_.size());
        const int cols = static_cast<int>(generators.size());
        // Augmented matrix [A | target], A[e][j] = cell(S[gen_j], e).
        std::vector<std::vector<int>> m(rows, std::vector<int>(cols + 1, f.zero));
        for (int r = 0; r < rows; ++r) {
            for (int j = 0; j < cols; ++j) m[r][j] = cell(s_[generators[j]], e_[r]);
            m[r][cols] = target[r];
        }
        std::vector<int> pivot_col(rows, -1);
        int rank = 0;
        for (int c = 0; c < cols && rank < rows; ++c) {
            int piv = rank;
            while (piv < rows && m[piv][c] == f.zero) ++piv;
            if (piv == rows) continue;
            std::swap(m[rank], m[piv]);
            int inv = f.inv(m[rank][c]);
            for (int& x : m[rank]) x = f.mul(x, inv);
            for (int r = 0; r < rows; ++r)
                if (r != rank && m[r][c] != f.zero) {
                    int factor = f.neg(m[r][c]);
                    for (int cc = 0; cc <= cols; ++cc)
                        m[r][cc] = f.add(m[r][cc], f.mul(factor, m[rank][cc]));
                }
            pivot_col[rank] = c;
            ++rank;
        }
        for (int r = rank; r < rows; ++r)
            if (m[r][cols] != f.zero) return std::nullopt;
        std::vector<int> coeff(cols, f.zero);
        for (int r = 0; r < rank; ++r) coeff[pivot_col[r]] = m[r][cols];
        Value<int> v;
        v.kind = EffectKind::FreeSemimodule;
        for (int j = 0; j < cols; ++j)
            if (coeff[j] != f.zero) {
                v.elems.push_back(generators[j]);
                v.coeffs.push_back(coeff[j]);
            }
        return v;
    }

    std::optional<Word> consistency_full(const EnumCaps& caps) const {
        if (effect_.kind == EffectKind::Identity) {
            // Unit contexts only: prefixes with equal rows must stay equal
            // after every symbol. Works on the cached rows directly.
            std::map<std::vector<int>, std::vector<const Word*>> by_row;
            for (const Word& s : s_) by_row[row(s)].push_back(&s);
            for (const auto& [top, members] : by_row) {
                if (members.size() < 2) continue;
                for (Symbol a : alphabet_) {
                    const std::vector<int>& first = row(*members[0] + a);
                    for (std::size_t k = 1; k < members.size(); ++k) {
                        const std::vector<int>& other = row(*members[k] + a);
                        for (std::size_t ei = 0; ei < e_.size(); ++ei)
                            if (first[ei] != other[ei]) return Word(1, a) + e_[ei];
                    }
                }
            }
            return std::nullopt;
        }
        // Two contexts with equal extended top rows must have equal extended
        // boundary rows for every symbol.
        std::map<std::vector<int>, std::vector<Value<int>>> groups;
        for (const auto& ctx : effect_.enumerate(all_indices(), caps))
            groups[row_ext(ctx)].push_back(ctx);
        for (const auto& [top, ctxs] : groups) {
            if (ctxs.size() < 2) continue;
            for (Symbol a : alphabet_) {
                std::vector<int> first = row_ext_bottom(ctxs[0], a);
                for (std::size_t k = 1; k < ctxs.size(); ++k) {
                    std::vector<int> other = row_ext_bottom(ctxs[k], a);
                    for (std::size_t ei = 0; ei < e_.size(); ++ei)
                        if (first[ei] != other[ei]) return Word(1, a) + e_[ei];
                }
            }
        }
        return std::nullopt;
    }

    // Column of the table, indexed by S.
    std::vector<int> column(const Word& suffix_label, Symbol a, bool shifted) const {
        std::vector<int> c;
        c.reserve(s_.size());
        for (const Word& s : s_)
            c.push_back(shifted ? cell(s + a, suffix_label) : cell(s, suffix_label));
        return c;
    }

    std::optional<Word> consistency_transpose(const EnumCaps& caps) const {
        // Closedness of the transposed table: each shifted column must be an
        // effectful combination of existing columns. Uses only cells already
        // present, so no new membership queries are triggered.
        std::vector<std::vector<int>> base;
        for (const Word& e : e_) base.push_back(column(e, 'a', false));
        auto combine = [&](const Value<int>& ctx) {
            std::vector<int> c;
            c.reserve(s_.size());
            for (std::size_t si = 0; si < s_.size(); ++si)
                c.push_back(extend_to_output(
                    effect_, alg_, [&](int ei) { return base[ei][si]; }, ctx));
            return c;
        };
        std::vector<int> eidx(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) eidx[i] = static_cast<int>(i);
        for (Symbol a : alphabet_)
            for (const Word& e : e_) {
                std::vector<int> target = column(e, a, true);
                bool found = false;
                if (effect_.kind == EffectKind::FreeSemimodule) {
                    found = column_in_span(base, target);
                } else if (effect_.kind == EffectKind::Powerset && !alg_.conjunctive) {
                    std::vector<int> join(s_.size(), 0);
                    for (const auto& col : base)
                        if (row_leq(col, target))
                            for (std::size_t i = 0; i < join.size(); ++i)
                                join[i] = join[i] || col[i];
                    found = join == target;
                } else {
                    for (const auto& ctx : effect_.enumerate(eidx, caps))
                        if (combine(ctx) == target) {
                            found = true;
                            break;
                        }
                }
                if (!found) return Word(1, a) + e;
            }
        return std::nullopt;
    }

    bool column_in_span(const std::vector<std::vector<int>>& base,
                        std::vector<int> target) const {
        const Semiring& f = effect_.ring;
        std::vector<std::vector<int>> rows = base;
        std::size_t rank = 0;
        const std::size_t dim = target.size();
        for (std::size_t c = 0; c < dim && rank < rows.size(); ++c) {
            std::size_t piv = rank;
            while (piv < rows.size() && rows[piv][c] == f.zero) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            int inv = f.inv(rows[rank][c]);
            for (int& x : rows[rank]) x = f.mul(x, inv);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != rank && rows[i][c] != f.zero) {
                    int factor = f.neg(rows[i][c]);
                    for (std::size_t cc = 0; cc < dim; ++cc)
                        rows[i][cc] = f.add(rows[i][cc], f.mul(factor, rows[rank][cc]));
                }
            if (target[c] != f.zero) {
                int factor = f.neg(target[c]);
                for (std::size_t cc = 0; cc < dim; ++cc)
                    target[cc] = f.add(target[cc], f.mul(factor, rows[rank][cc]));
            }
            ++rank;
        }
        for (int x : target)
            if (x != f.zero) return false;
        return true;
    }

    std::optional<Word> consistency_bollig() const {
        // Join-preservation check on generators only: domination of top rows
        // must persist on the boundary.
        for (const Word& s1 : s_)
            for (const Word& s2 : s_) {
                if (s1 == s2 || !row_leq(row(s1), row(s2))) continue;
                for (Symbol a : alphabet_)
                    for (const Word& e : e_)
                        if (cell(s1 + a, e) > cell(s2 + a, e)) return Word(1, a) + e;
            }
        return std::nullopt;
    }

    Effect effect_;
    OutputAlgebra alg_;
    Teacher* teacher_;
    Alphabet alphabet_;
    std::vector<Word> s_;
    std::vector<Word> e_;
    std::map<Word, std::map<Word, int>> cells_;
    // Derived from cells_ by fill(); rows follow the E-order.
    std::map<Word, std::vector<int>> rows_;
};

}  // namespace lstar
