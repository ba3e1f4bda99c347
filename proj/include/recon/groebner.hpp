#pragma once

#include "recon/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recon {

/// Hard failure for runaway completions; never truncate silently.
struct ResourceCapExceeded : std::runtime_error {
    explicit ResourceCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct GroebnerConfig {
    std::size_t max_pairs = 100000;   // S-pairs processed per completion
    std::size_t max_steps = 10000000; // single reduction steps per normal form
};

inline GroebnerConfig& groebner_config() {
    static GroebnerConfig cfg;
    return cfg;
}

struct IdealBasis {
    std::vector<Polynomial> gens; // nonzero, deduplicated up to scalar
    MonomialOrder order;

    IdealBasis(std::vector<Polynomial> g, MonomialOrder o) : gens(std::move(g)), order(std::move(o)) {
        prune();
    }

    void prune() {
        std::vector<Polynomial> out;
        for (auto& f : gens) {
            if (f.is_zero()) continue;
            const auto& [c, m] = f.leading();
            Polynomial monic = scale(Rat(1) / c, f);
            bool dup = false;
            for (const auto& g : out)
                if (g == monic) { dup = true; break; }
            if (!dup) out.push_back(std::move(monic));
        }
        gens = std::move(out);
    }
};

struct GroebnerBasis {
    IdealBasis basis;
    bool is_groebner = false;
    bool is_reduced = false;
};

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& o) {
    const auto& [cf, mf] = f.leading("s-polynomial");
    const auto& [cg, mg] = g.leading("s-polynomial");
    Monomial gamma = lcm(mf, mg);
    Polynomial left = mul_term(f, Rat(1) / cf, mf.divide_into(gamma));
    Polynomial right = mul_term(g, Rat(1) / cg, mg.divide_into(gamma));
    return sub(left, right, o);
}

/// Remainder of f under full multivariate division by the basis, together
/// with the quotients: f = sum_i quotient[i] * gens[i] + remainder.  Ties
/// between applicable divisors go to the first generator in basis order.
struct ReductionResult {
    Polynomial remainder;
    std::vector<Polynomial> quotients;
};

inline ReductionResult reduce_full(const Polynomial& f, const std::vector<Polynomial>& gens,
                                   const MonomialOrder& o) {
    ReductionResult res;
    res.quotients.assign(gens.size(), Polynomial::zero());
    Polynomial work = f;
    Polynomial done; // processed tail, no monomial divisible by any leading monomial
    std::size_t steps = 0;
    while (!work.is_zero()) {
        if (++steps > groebner_config().max_steps)
            throw ResourceCapExceeded("reduction exceeded step cap");
        const auto& [c, m] = work.leading();
        bool reduced = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& [gc, gm] = gens[i].leading();
            if (!gm.divides(m)) continue;
            Rat factor = c / gc;
            Monomial q = gm.divide_into(m);
            work = sub(work, mul_term(gens[i], factor, q), o);
            res.quotients[i] = add(res.quotients[i], Polynomial::term(factor, q, o), o);
            reduced = true;
            break;
        }
        if (!reduced) {
            done = add(done, Polynomial::term(c, m, o), o);
            work = sub(work, Polynomial::term(c, m, o), o);
        }
    }
    res.remainder = done;
    return res;
}

inline Polynomial normal_form(const Polynomial& f, const IdealBasis& basis) {
    return reduce_full(f, basis.gens, basis.order).remainder;
}

struct BuchbergerReport {
    bool ok = true;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
    Polynomial witness_normal_form;
};

/// Buchberger criterion: every pairwise S-polynomial reduces to zero.
inline BuchbergerReport buchberger_check(const IdealBasis& basis) {
    BuchbergerReport rep;
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.gens.size(); ++j) {
            ++rep.pairs_checked;
            Polynomial s = s_polynomial(basis.gens[i], basis.gens[j], basis.order);
            Polynomial nf = normal_form(s, basis);
            if (!nf.is_zero()) {
                rep.ok = false;
                rep.witness_pair = {i, j};
                rep.witness_normal_form = nf;
                return rep;
            }
        }
    }
    return rep;
}

namespace detail {

/// Inter-reduce a Groebner basis to the unique reduced one: monic generators,
/// no term of any generator divisible by another's leading monomial.
inline std::vector<Polynomial> autoreduce(std::vector<Polynomial> gens, const MonomialOrder& o) {
    // Drop generators whose leading monomial is divisible by another's.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& mi = gens[i].leading().second;
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            const auto& mj = gens[j].leading().second;
            if (mj.divides(mi) && !(mi == mj && j > i)) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(gens[i]);
    }
    // Reduce tails.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Polynomial nf = reduce_full(minimal[i], others, o).remainder;
            if (nf != minimal[i]) {
                if (nf.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<std::ptrdiff_t>(i));
                } else {
                    minimal[i] = nf;
                }
                changed = true;
                break;
            }
        }
    }
    for (auto& g : minimal) g = scale(Rat(1) / g.leading().first, g);
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& x, const Polynomial& y) {
        return compare(o, x.leading().second, y.leading().second) == Ordering::Greater;
    });
    return minimal;
}

} // namespace detail

/// Buchberger's algorithm with the normal pair-selection strategy (smallest
/// lcm degree first) and the coprime-leading-monomial skip.  Returns the
/// reduced Groebner basis; raises ResourceCapExceeded past the pair cap.
inline GroebnerBasis buchberger_complete(const IdealBasis& input) {
    const MonomialOrder& o = input.order;
    std::vector<Polynomial> gens = input.gens;

    struct Pair {
        Int degree;
        std::size_t i, j;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        if (a.degree != b.degree) return a.degree > b.degree; // min-heap by degree
        if (a.i != b.i) return a.i > b.i;
        return a.j > b.j;
    };
    std::priority_queue<Pair, std::vector<Pair>, decltype(pair_less)> queue(pair_less);

    auto push_pairs_for = [&](std::size_t j) {
        const auto& mj = gens[j].leading().second;
        for (std::size_t i = 0; i < j; ++i) {
            const auto& mi = gens[i].leading().second;
            if (coprime(mi, mj)) continue; // Buchberger's first criterion
            queue.push({lcm(mi, mj).weighted_degree(*o.table), i, j});
        }
    };
    for (std::size_t j = 0; j < gens.size(); ++j) push_pairs_for(j);

    std::size_t processed = 0;
    while (!queue.empty()) {
        if (++processed > groebner_config().max_pairs)
            throw ResourceCapExceeded("completion exceeded S-pair cap (" +
                                      std::to_string(groebner_config().max_pairs) + ")");
        Pair p = queue.top();
        queue.pop();
        Polynomial s = s_polynomial(gens[p.i], gens[p.j], o);
        Polynomial nf = reduce_full(s, gens, o).remainder;
        if (nf.is_zero()) continue;
        nf = scale(Rat(1) / nf.leading().first, nf);
        gens.push_back(nf);
        push_pairs_for(gens.size() - 1);
    }

    GroebnerBasis out{IdealBasis(detail::autoreduce(std::move(gens), o), o), true, true};
    return out;
}

/// An order usable to eliminate `vars`: either a block order whose leading
/// block covers them (valid for any ideal), or weighted DegRevLex on a
/// homogeneous basis with the dropped variables forming a prefix or suffix of
/// the table (the convention the saturation pipeline produces, where the
/// dropped variable enters through a single m - u generator).
inline bool elimination_compatible(const MonomialOrder& o, const std::vector<int>& vars,
                                   const std::vector<Polynomial>& gens) {
    if (vars.empty()) return true;
    if (o.kind == MonomialOrder::Kind::BlockElim) {
        for (int v : vars)
            if (std::find(o.block.begin(), o.block.end(), v) == o.block.end()) return false;
        return true;
    }
    if (o.kind == MonomialOrder::Kind::DegRevLex) {
        std::vector<int> sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        int n = static_cast<int>(o.table->size());
        int k = static_cast<int>(sorted.size());
        bool suffix = true, prefix = true;
        for (int i = 0; i < k; ++i) {
            if (sorted[static_cast<std::size_t>(i)] != n - k + i) suffix = false;
            if (sorted[static_cast<std::size_t>(i)] != i) prefix = false;
        }
        if (!suffix && !prefix) return false;
        for (const auto& g : gens)
            if (!g.is_homogeneous(*o.table)) return false;
        return true;
    }
    return false;
}

/// Generators of G not involving the dropped variables.  Precondition: the
/// order is elimination-compatible (checked).
inline IdealBasis eliminate(const GroebnerBasis& g, const std::vector<int>& vars_to_drop) {
    if (!g.is_groebner) throw std::invalid_argument("eliminate requires a Groebner basis");
    if (!elimination_compatible(g.basis.order, vars_to_drop, g.basis.gens))
        throw std::invalid_argument("order not elimination-compatible for requested variables");
    std::vector<Polynomial> kept;
    for (const auto& f : g.basis.gens) {
        bool uses = false;
        for (int v : vars_to_drop)
            if (f.involves(v)) { uses = true; break; }
        if (!uses) kept.push_back(f);
    }
    return IdealBasis(std::move(kept), g.basis.order);
}

namespace detail {

/// Divide out the largest power of variable `var` from g (every monomial).
inline Polynomial strip_variable_power(const Polynomial& g, int var, const MonomialOrder& o) {
    if (g.is_zero()) return g;
    std::int64_t k = -1;
    for (const auto& [c, m] : g.terms()) {
        std::int64_t e = m.exp_of(var);
        k = (k < 0) ? e : std::min(k, e);
        if (k == 0) return g;
    }
    Monomial q = Monomial::var(var, k);
    std::vector<Polynomial::Term> terms;
    for (const auto& [c, m] : g.terms()) terms.emplace_back(c, q.divide_into(m));
    return Polynomial::from_terms(std::move(terms), o);
}

} // namespace detail

/// Saturation (I : m^inf) for a homogeneous ideal, by adjoining m - u with u
/// graded to keep homogeneity.  The Groebner basis under DegRevLex with u
/// last lets powers of u be divided out of the generators (equivalently this
/// saturates by u); once u-saturated, a block elimination order removes u.
inline IdealBasis saturate_ideal(const IdealBasis& input, const Monomial& m) {
    const MonomialOrder& base_order = input.order;
    const VarTablePtr& base_table = base_order.table;
    if (base_order.kind != MonomialOrder::Kind::DegRevLex)
        throw std::invalid_argument("saturate_ideal expects a weighted DegRevLex order");
    for (const auto& f : input.gens)
        if (!f.is_homogeneous(*base_table))
            throw std::invalid_argument("saturate_ideal requires homogeneous generators");
    if (m.is_one()) return input;

    Int wdeg = m.weighted_degree(*base_table);
    std::string u_name = "u";
    while (base_table->contains(u_name)) u_name += "_";
    VarTablePtr ext = extend_table(base_table, {u_name}, {static_cast<long>(wdeg)});
    int u = ext->index_of(u_name);
    MonomialOrder grevlex_u_last = MonomialOrder::degrevlex(ext);

    std::vector<Polynomial> gens;
    for (const auto& f : input.gens) gens.push_back(retable(f, *base_table, grevlex_u_last));
    // m - u, remapped into the extended table.
    {
        std::vector<std::pair<int, std::int64_t>> exps;
        for (const auto& [v, e] : m.exps()) exps.emplace_back(ext->index_of(base_table->name(v)), e);
        Polynomial rel = sub(Polynomial::term(Rat(1), Monomial(std::move(exps)), grevlex_u_last),
                             Polynomial::term(Rat(1), Monomial::var(u), grevlex_u_last), grevlex_u_last);
        gens.push_back(rel);
    }

    // Saturate by u: complete, strip u powers, repeat until stable.
    while (true) {
        GroebnerBasis gb = buchberger_complete(IdealBasis(gens, grevlex_u_last));
        bool stripped = false;
        std::vector<Polynomial> next;
        for (const auto& g : gb.basis.gens) {
            Polynomial s = detail::strip_variable_power(g, u, grevlex_u_last);
            if (s != g) stripped = true;
            next.push_back(std::move(s));
        }
        gens = std::move(next);
        if (!stripped) break;
    }

    // Drop u through a genuine elimination order.
    MonomialOrder block = MonomialOrder::block_elim(ext, {u});
    std::vector<Polynomial> reordered;
    for (const auto& g : gens) reordered.push_back(g.resorted(block));
    GroebnerBasis gb = buchberger_complete(IdealBasis(std::move(reordered), block));
    IdealBasis eliminated = eliminate(gb, {u});

    std::vector<Polynomial> back;
    for (const auto& f : eliminated.gens) back.push_back(retable(f, *ext, base_order));
    return IdealBasis(std::move(back), base_order);
}

/// Equality of ideals through uniqueness of the reduced Groebner basis.
inline bool ideal_equal(const IdealBasis& lhs, const IdealBasis& rhs) {
    if (lhs.order.table != rhs.order.table || !lhs.order.same_as(rhs.order))
        throw std::invalid_argument("ideal_equal needs identical variable table and order");
    GroebnerBasis a = buchberger_complete(lhs);
    GroebnerBasis b = buchberger_complete(rhs);
    return a.basis.gens == b.basis.gens;
}

namespace detail {

/// Largest subset of variables not hit fully by any leading monomial, found
/// by branching on the variables of a violating monomial.
inline std::size_t max_independent_set(const std::vector<std::vector<int>>& supports,
                                       std::vector<bool>& allowed, std::size_t allowed_count,
                                       std::map<std::vector<bool>, std::size_t>& memo) {
    auto it = memo.find(allowed);
    if (it != memo.end()) return it->second;
    const std::vector<int>* violator = nullptr;
    for (const auto& s : supports) {
        bool inside = true;
        for (int v : s)
            if (!allowed[static_cast<std::size_t>(v)]) { inside = false; break; }
        if (inside) { violator = &s; break; }
    }
    std::size_t best = 0;
    if (!violator) {
        best = allowed_count;
    } else {
        for (int v : *violator) {
            allowed[static_cast<std::size_t>(v)] = false;
            best = std::max(best, max_independent_set(supports, allowed, allowed_count - 1, memo));
            allowed[static_cast<std::size_t>(v)] = true;
            if (best == allowed_count - 1) break; // cannot do better on this branch
        }
    }
    memo[allowed] = best;
    return best;
}

} // namespace detail

/// Krull dimension of the quotient ring, via independent variable sets modulo
/// the initial ideal.  Requires a degree-compatible order; returns nullopt for
/// the unit ideal (empty variety).
inline std::optional<std::size_t> krull_dimension(const IdealBasis& input) {
    if (input.order.kind != MonomialOrder::Kind::DegRevLex)
        throw std::invalid_argument("krull_dimension needs a degree-compatible order");
    GroebnerBasis gb = buchberger_complete(input);
    std::vector<std::vector<int>> supports;
    for (const auto& g : gb.basis.gens) {
        const auto& m = g.leading().second;
        if (m.is_one()) return std::nullopt; // 1 in the ideal: empty variety
        std::vector<int> s;
        for (const auto& [v, e] : m.exps()) s.push_back(v);
        supports.push_back(std::move(s));
    }
    std::size_t n = input.order.table->size();
    std::vector<bool> allowed(n, true);
    std::map<std::vector<bool>, std::size_t> memo;
    return detail::max_independent_set(supports, allowed, n, memo);
}

} // namespace recon
