#pragma once

#include "recon/artin.hpp"
#include "recon/combinatorics.hpp"
#include "recon/groebner.hpp"
#include "recon/poly.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace recon {

/// Deformation parameters: one tuple per step i = 1..e-2, stored in the
/// display order (lambda_{i,beta_i-1}, ..., lambda_{i,1}, lambda_{i,0}).
struct DeformationParams {
    std::vector<std::vector<Rat>> tuples;

    const Rat& lambda(int i, int j) const {
        const auto& row = tuples.at(static_cast<std::size_t>(i - 1));
        return row.at(row.size() - 1 - static_cast<std::size_t>(j));
    }

    bool in_delta() const {
        for (const auto& row : tuples) {
            Rat sum(0);
            for (const auto& v : row) sum += v;
            if (sum != 0) return false;
        }
        return true;
    }
};

inline std::vector<long> lambda_shape(const GroupParams& g) { return hj_dual(g).terms; }

inline DeformationParams zero_lambda(const GroupParams& g) {
    DeformationParams p;
    for (long b : lambda_shape(g)) p.tuples.emplace_back(static_cast<std::size_t>(b), Rat(0));
    return p;
}

/// Seeded point of Delta: free entries are small rationals, lambda_{i,0}
/// closes each row to sum zero.
inline DeformationParams random_lambda_in_delta(const GroupParams& g, SplitMix64& rng) {
    DeformationParams p;
    for (long b : lambda_shape(g)) {
        std::vector<Rat> row;
        Rat sum(0);
        for (long j = 0; j < b - 1; ++j) {
            row.push_back(rng.small_rational());
            sum += row.back();
        }
        row.push_back(-sum);
        p.tuples.push_back(std::move(row));
    }
    return p;
}

inline DeformationParams random_lambda_free(const GroupParams& g, SplitMix64& rng) {
    DeformationParams p;
    for (long b : lambda_shape(g)) {
        std::vector<Rat> row;
        for (long j = 0; j < b; ++j) row.push_back(rng.small_rational());
        p.tuples.push_back(std::move(row));
    }
    return p;
}

/// Symbolic lambda with the Delta constraint imposed: lambda_{i,j} for j >= 1
/// are fresh variables, lambda_{i,0} is rewritten as -(sum of the others).
struct SymbolicDelta {};

using LambdaSpec = std::variant<DeformationParams, SymbolicDelta>;

struct DeformedStep {
    int i = 0;
    int d = 0;                         // l_i - l_{i-1}
    std::vector<Polynomial> relations; // listed j = beta_i-1 down to 0
};

struct DeformedRelations {
    GroupParams group;
    VarTablePtr table;   // arrows, then any symbolic lambda variables
    MonomialOrder order;
    std::vector<DeformedStep> steps;
};

namespace detail {

inline std::string lambda_name(int i, int j) {
    return "lam" + std::to_string(i) + "_" + std::to_string(j);
}

} // namespace detail

/// Relations of the deformed algebra at dimension vector (1,...,1), where all
/// arrow variables commute.  Step i contributes beta_i relations when
/// d_i > 0 and two relations when d_i = 0; in both cases they sum to the
/// constant -(sum of the step's lambdas).
inline DeformedRelations deformed_relations(const GeneratorSet& s, const LambdaSpec& spec) {
    const GroupParams& g = s.group();
    auto beta = lambda_shape(g);
    int steps = static_cast<int>(beta.size());

    if (const auto* concrete = std::get_if<DeformationParams>(&spec)) {
        if (concrete->tuples.size() != beta.size()) throw std::invalid_argument("lambda shape mismatch");
        for (int i = 1; i <= steps; ++i)
            if (concrete->tuples[static_cast<std::size_t>(i - 1)].size() !=
                static_cast<std::size_t>(beta[static_cast<std::size_t>(i - 1)]))
                throw std::invalid_argument("lambda tuple length mismatch at step " + std::to_string(i));
    }

    DeformedRelations out;
    out.group = g;

    bool symbolic = std::holds_alternative<SymbolicDelta>(spec);
    VarTablePtr table = s.arrow_table();
    if (symbolic) {
        std::vector<std::string> names;
        std::vector<long> weights;
        for (int i = 1; i <= steps; ++i) {
            long w = s.series().i_seq[static_cast<std::size_t>(i)] +
                     s.series().j_seq[static_cast<std::size_t>(i)];
            for (long j = beta[static_cast<std::size_t>(i - 1)] - 1; j >= 1; --j) {
                names.push_back(detail::lambda_name(i, static_cast<int>(j)));
                weights.push_back(w);
            }
        }
        table = extend_table(table, names, weights);
    }
    out.table = table;
    out.order = MonomialOrder::degrevlex(table);
    const MonomialOrder& o = out.order;

    // lambda_{i,j} as a polynomial: concrete rational, fresh variable, or
    // (symbolically, j = 0) minus the sum of the step's other entries.
    auto lam = [&](int i, int j) -> Polynomial {
        if (const auto* concrete = std::get_if<DeformationParams>(&spec))
            return Polynomial::constant(concrete->lambda(i, j));
        if (j >= 1)
            return Polynomial::term(Rat(1), Monomial::var(table->index_of(detail::lambda_name(i, j))), o);
        Polynomial sum;
        for (long jj = 1; jj <= beta[static_cast<std::size_t>(i - 1)] - 1; ++jj)
            sum = add(sum,
                      Polynomial::term(Rat(1), Monomial::var(table->index_of(detail::lambda_name(i, static_cast<int>(jj)))), o),
                      o);
        return negate(sum);
    };
    auto mono = [&](const Monomial& m) {
        // Arrow monomials land in the (possibly extended) table positions 0..;
        // arrow indices agree between the two tables by construction.
        return Polynomial::term(Rat(1), m, o);
    };
    auto rel = [&](const Monomial& lhs, const Monomial& rhs, int i, int j) {
        return sub(sub(mono(lhs), mono(rhs), o), lam(i, j), o);
    };

    if (g.a == 1) {
        // Parallel-arrow shape: ladder g_0..g_{r-1} = a1, a2, k1, ..., k_{r-2}
        // against the pair c1, c2.  The step i relations are the cycle pair
        //   g_i c1 - g_{i-1} c2 = lambda_{i,1},  c2 g_{i-1} - c1 g_i = lambda_{i,0},
        // the sign of the second fixed by the Delta obstruction.
        for (int i = 1; i <= steps; ++i) {
            Monomial gi = Monomial::var(s.ladder_arrow(i));
            Monomial gprev = Monomial::var(s.ladder_arrow(i - 1));
            Monomial c1 = Monomial::var(s.arrow("c1"));
            Monomial c2 = Monomial::var(s.arrow("c2"));
            DeformedStep st{i, 0, {}};
            st.relations.push_back(rel(gi * c1, gprev * c2, i, 1));
            st.relations.push_back(rel(gprev * c2, gi * c1, i, 0));
            out.steps.push_back(std::move(st));
        }
        return out;
    }

    for (int i = 1; i <= steps; ++i) {
        int li = s.tail_of_k(i), lprev = s.tail_of_k(i - 1);
        int d = li - lprev;
        long b = beta[static_cast<std::size_t>(i - 1)];
        DeformedStep st{i, d, {}};
        Monomial ki = Monomial::var(s.k_arrow(i));
        Monomial kprev = Monomial::var(s.k_arrow(i - 1));
        Monomial c_down = s.clockwise_path(0, li);       // C_{0,l_i}
        Monomial a_up = s.anticlockwise_path(0, lprev);  // A_{0,l_{i-1}}

        if (d == 0) {
            st.relations.push_back(rel(ki * c_down, kprev * a_up, i, 1));
            st.relations.push_back(rel(a_up * kprev, c_down * ki, i, 0));
        } else {
            auto cw = [&](int v) {
                return Monomial::var(s.arrow(arrow_label(ArrowKind::Clockwise, v, v - 1)));
            };
            auto acw = [&](int v) {
                return Monomial::var(s.arrow(arrow_label(ArrowKind::Anticlockwise, v, v + 1)));
            };
            st.relations.push_back(rel(ki * c_down, cw(li) * acw(li - 1), i, static_cast<int>(b - 1)));
            for (long j = b - 2; j >= 2; --j) {
                int v = lprev + static_cast<int>(j) - 1;
                st.relations.push_back(rel(acw(v) * cw(v + 1), cw(v) * acw(v - 1), i, static_cast<int>(j)));
            }
            st.relations.push_back(rel(acw(lprev) * cw(lprev + 1), kprev * a_up, i, 1));
            st.relations.push_back(rel(a_up * kprev, c_down * ki, i, 0));
        }
        out.steps.push_back(std::move(st));
    }
    return out;
}

inline DeformedRelations deformed_relations(const GroupParams& g, const LambdaSpec& spec) {
    GeneratorSet s(g);
    return deformed_relations(s, spec);
}

/// The representation variety at (1,...,1) is empty exactly when some step's
/// relations sum to a nonzero constant; with commuting scalars the cycle
/// terms telescope away, leaving -(sum of the step's lambdas).
inline bool rep_variety_empty_check(const GroupParams& g, const DeformationParams& lambda) {
    DeformedRelations rels = deformed_relations(g, lambda);
    for (const auto& st : rels.steps) {
        Polynomial sum;
        for (const auto& r : st.relations) sum = add(sum, r, rels.order);
        if (!sum.is_constant())
            throw std::logic_error("step relations do not telescope to a constant");
        if (sum.constant_value() != 0) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Chart elimination
// ---------------------------------------------------------------------------

/// Result of normalising a chart's unit arrows and solving the deformed
/// relations by direct substitution.
struct Chart {
    std::string name;
    VarTablePtr table;                    // arrows + symbolic lambdas
    MonomialOrder order;
    std::vector<std::string> units;       // arrows set to 1
    std::vector<std::string> coordinates; // free arrows
    std::map<std::string, Polynomial> solved; // every other arrow
    std::vector<Polynomial> residual;     // leftover relations (nonzero)

    bool certified_affine_plane() const { return residual.empty() && coordinates.size() == 2; }
};

namespace detail {

/// Directed substitution: repeatedly pick a relation that is linear with
/// constant coefficient in a single unsolved arrow and solve it.  Relations
/// that substitute to zero are discarded; anything left is residual.
inline Chart run_chart_engine(const GeneratorSet& s, const DeformedRelations& rels,
                              const std::vector<std::string>& units,
                              const std::vector<std::string>& coords, std::string name) {
    Chart chart;
    chart.name = std::move(name);
    chart.table = rels.table;
    chart.order = rels.order;
    chart.units = units;
    chart.coordinates = coords;
    const MonomialOrder& o = rels.order;

    std::map<int, Polynomial> value; // arrow var -> polynomial over coords/lambda/pending
    std::set<int> pending;           // arrows not yet solved
    for (const auto& a : s.quiver().arrows) pending.insert(rels.table->index_of(a.label));
    for (const auto& u : units) {
        int v = rels.table->index_of(u);
        value[v] = Polynomial::constant(Rat(1));
        pending.erase(v);
    }
    for (const auto& c : coords) pending.erase(rels.table->index_of(c));

    std::vector<Polynomial> todo;
    for (const auto& st : rels.steps)
        for (const auto& r : st.relations) todo.push_back(r);

    // Stored values never mention a solved arrow, so one substitution pass
    // over the table is exact.
    auto substituted = [&](Polynomial f) {
        for (const auto& [v, val] : value)
            if (f.involves(v)) f = substitute(f, v, val, o);
        return f;
    };
    auto record_solution = [&](int x, Polynomial expr) {
        for (auto& [v, val] : value)
            if (val.involves(x)) val = substitute(val, x, expr, o);
        value[x] = std::move(expr);
        pending.erase(x);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<Polynomial> keep;
        for (const auto& raw : todo) {
            Polynomial f = substituted(raw);
            if (f.is_zero()) { progress = true; continue; }
            bool solved_one = false;
            for (int x : pending) {
                if (!f.involves(x)) continue;
                // f = A*x + B with A a nonzero rational and B free of x?
                Polynomial a_part, b_part;
                bool linear = true;
                for (const auto& [c, mono] : f.terms()) {
                    std::int64_t e = mono.exp_of(x);
                    if (e == 0) {
                        b_part = add(b_part, Polynomial::term(c, mono, o), o);
                    } else if (e == 1) {
                        std::vector<std::pair<int, std::int64_t>> rest;
                        for (const auto& ve : mono.exps())
                            if (ve.first != x) rest.push_back(ve);
                        a_part = add(a_part, Polynomial::term(c, Monomial(std::move(rest)), o), o);
                    } else {
                        linear = false;
                        break;
                    }
                }
                if (!linear || !a_part.is_constant() || a_part.is_zero()) continue;
                record_solution(x, scale(Rat(-1) / a_part.constant_value(), b_part));
                solved_one = true;
                progress = true;
                break;
            }
            if (!solved_one) keep.push_back(raw);
        }
        todo = std::move(keep);
    }

    for (const auto& raw : todo) {
        Polynomial f = substituted(raw);
        if (f.is_zero()) continue;
        if (f.is_constant())
            throw std::domain_error("inconsistent chart normalisation: relation reduces to " +
                                    to_string(f.constant_value()));
        chart.residual.push_back(f);
    }
    IdealBasis dedup(chart.residual, o);
    chart.residual = dedup.gens;

    for (const auto& [v, val] : value) {
        const std::string& label = rels.table->name(v);
        bool is_coord = std::find(coords.begin(), coords.end(), label) != coords.end();
        bool is_unit = std::find(units.begin(), units.end(), label) != units.end();
        if (!is_coord && !is_unit) chart.solved[label] = val;
    }
    // Any still-pending arrows count as extra coordinates (custom charts).
    for (int v : pending) {
        const std::string& label = rels.table->name(v);
        if (std::find(chart.coordinates.begin(), chart.coordinates.end(), label) ==
            chart.coordinates.end())
            chart.coordinates.push_back(label);
    }
    return chart;
}

} // namespace detail

/// The chart W_t of the (-n,1,...,1)-stability cover, via the triangular
/// normalisation: W_0 sets every clockwise arrow except c_{1,0} to one, W_n
/// every anticlockwise arrow except a_{n,0}, and the interior W_t mixes the
/// two around vertex t.  For a = 1 the two charts normalise c2 and c1.
inline Chart chart_eliminate(const GeneratorSet& s, int t, const LambdaSpec& spec) {
    const GroupParams& g = s.group();
    if (const auto* concrete = std::get_if<DeformationParams>(&spec))
        if (!concrete->in_delta()) throw std::invalid_argument("lambda must lie in Delta");
    DeformedRelations rels = deformed_relations(s, spec);
    int n = s.quiver().n;

    std::vector<std::string> units, coords;
    if (g.a == 1) {
        if (t != 1 && t != 2) throw std::invalid_argument("degenerate case has charts 1 and 2");
        if (t == 1) {
            units = {"c2"};
            coords = {"c1", s.arrow_table()->name(s.ladder_arrow(s.m()))};
        } else {
            units = {"c1"};
            coords = {"c2", "a1"};
        }
    } else if (t == 0) {
        for (int v = 2; v <= n; ++v) units.push_back(arrow_label(ArrowKind::Clockwise, v, v - 1));
        units.push_back(arrow_label(ArrowKind::Clockwise, 0, n));
        coords = {arrow_label(ArrowKind::Clockwise, 1, 0), arrow_label(ArrowKind::Anticlockwise, 0, 1)};
    } else if (t == n) {
        for (int v = 0; v < n; ++v) units.push_back(arrow_label(ArrowKind::Anticlockwise, v, v + 1));
        coords = {arrow_label(ArrowKind::Clockwise, 0, n), arrow_label(ArrowKind::Anticlockwise, n, 0)};
    } else if (t > 0 && t < n) {
        for (int v = t + 2; v <= n; ++v) units.push_back(arrow_label(ArrowKind::Clockwise, v, v - 1));
        units.push_back(arrow_label(ArrowKind::Clockwise, 0, n));
        for (int v = 0; v < t; ++v) units.push_back(arrow_label(ArrowKind::Anticlockwise, v, v + 1));
        coords = {arrow_label(ArrowKind::Clockwise, t + 1, t),
                  arrow_label(ArrowKind::Anticlockwise, t, t + 1)};
    } else {
        throw std::invalid_argument("chart index out of range");
    }
    return detail::run_chart_engine(s, rels, units, coords, "W" + std::to_string(t));
}

inline Chart chart_eliminate(const GroupParams& g, int t, const LambdaSpec& spec) {
    GeneratorSet s(g);
    return chart_eliminate(s, t, spec);
}

/// Same engine with a caller-chosen normalisation; the residual ideal may be
/// nonzero (used for the alternative-stability regression).
inline Chart chart_eliminate_custom(const GeneratorSet& s, const std::vector<std::string>& unit_arrows,
                                    const DeformationParams& lambda) {
    DeformedRelations rels = deformed_relations(s, LambdaSpec(lambda));
    Chart chart = detail::run_chart_engine(s, rels, unit_arrows, {}, "custom");
    return chart;
}

inline Chart chart_eliminate_custom(const GroupParams& g, const std::vector<std::string>& unit_arrows,
                                    const DeformationParams& lambda) {
    GeneratorSet s(g);
    return chart_eliminate_custom(s, unit_arrows, lambda);
}

/// Rank test of the Jacobian at a rational point of V(I): singular when the
/// rank drops below (ambient dimension - 2), the codimension of a surface
/// chart.
inline bool jacobian_singular_at(const IdealBasis& ideal, const std::vector<Rat>& point) {
    const VarTable& t = *ideal.order.table;
    if (point.size() != t.size()) throw std::invalid_argument("point dimension mismatch");

    auto eval = [&](const Polynomial& f) {
        Rat v(0);
        for (const auto& [c, mono] : f.terms()) {
            Rat term = c;
            for (const auto& [var, e] : mono.exps())
                for (std::int64_t k = 0; k < e; ++k) term *= point[static_cast<std::size_t>(var)];
            v += term;
        }
        return v;
    };
    for (const auto& f : ideal.gens)
        if (eval(f) != 0) throw std::invalid_argument("point does not lie on the variety");

    std::vector<std::vector<Rat>> jac;
    for (const auto& f : ideal.gens) {
        std::vector<Rat> row;
        for (std::size_t v = 0; v < t.size(); ++v)
            row.push_back(eval(derivative(f, static_cast<int>(v), ideal.order)));
        jac.push_back(std::move(row));
    }
    // Gaussian elimination over the rationals.
    std::size_t rank = 0;
    std::size_t cols = t.size();
    for (std::size_t c = 0; c < cols && rank < jac.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < jac.size() && jac[pivot][c] == 0) ++pivot;
        if (pivot == jac.size()) continue;
        std::swap(jac[rank], jac[pivot]);
        for (std::size_t r = 0; r < jac.size(); ++r) {
            if (r == rank || jac[r][c] == 0) continue;
            Rat f = jac[r][c] / jac[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) jac[r][cc] -= f * jac[rank][cc];
        }
        ++rank;
    }
    return rank < t.size() - 2;
}

// ---------------------------------------------------------------------------
// The base map and its fibres
// ---------------------------------------------------------------------------

/// Fibre ideal over lambda in Delta: the quasiminors together with the
/// consecutive differences z_{i,j} - z_{i,j+1} = lambda_{i,beta_i-1-j}.  The
/// closing relation of each step telescopes from the others and is asserted
/// redundant rather than generated.
inline IdealBasis pi_fiber_ideal(const GeneratorSet& s, const DeformationParams& lambda) {
    if (!lambda.in_delta()) throw std::invalid_argument("fibres are defined over Delta only");
    const MonomialOrder& o = s.z_order();
    std::vector<Polynomial> gens = qdet_ideal(s).gens;
    auto beta = lambda_shape(s.group());
    for (int i = 1; i <= static_cast<int>(beta.size()); ++i) {
        long b = beta[static_cast<std::size_t>(i - 1)];
        Polynomial telescoped;
        for (long j = 0; j <= b - 2; ++j) {
            Polynomial r = sub(sub(Polynomial::term(Rat(1), Monomial::var(s.z_index({i, static_cast<int>(j)})), o),
                                   Polynomial::term(Rat(1), Monomial::var(s.z_index({i, static_cast<int>(j + 1)})), o), o),
                               Polynomial::constant(lambda.lambda(i, static_cast<int>(b - 1 - j))), o);
            telescoped = add(telescoped, r, o);
            gens.push_back(std::move(r));
        }
        // Closing relation z_{i,b-1} - z_{i,0} = lambda_{i,0}.
        Polynomial closing = sub(sub(Polynomial::term(Rat(1), Monomial::var(s.z_index({i, static_cast<int>(b - 1)})), o),
                                     Polynomial::term(Rat(1), Monomial::var(s.z_index({i, 0})), o), o),
                                 Polynomial::constant(lambda.lambda(i, 0)), o);
        if (!add(telescoped, closing, o).is_zero())
            throw std::logic_error("closing fibre relation is not redundant");
    }
    return IdealBasis(std::move(gens), o);
}

inline IdealBasis pi_fiber_ideal(const GroupParams& g, const DeformationParams& lambda) {
    GeneratorSet s(g);
    return pi_fiber_ideal(s, lambda);
}

inline std::size_t fiber_dimension(const GeneratorSet& s, const DeformationParams& lambda) {
    auto dim = krull_dimension(pi_fiber_ideal(s, lambda));
    if (!dim) throw std::logic_error("fibre is empty");
    return *dim;
}

inline std::size_t fiber_dimension(const GroupParams& g, const DeformationParams& lambda) {
    GeneratorSet s(g);
    return fiber_dimension(s, lambda);
}

/// Evaluate the base map at a point with coordinates indexed like the
/// generator table: per step, the tuple of consecutive differences (wrapping
/// back to j = 0), which always sums to zero.
inline DeformationParams pi_map_eval(const GeneratorSet& s, const std::vector<Rat>& point) {
    if (point.size() != s.z_table()->size()) throw std::invalid_argument("point dimension mismatch");
    auto at = [&](int i, int j) { return point[static_cast<std::size_t>(s.z_index({i, j}))]; };
    DeformationParams lam;
    auto beta = lambda_shape(s.group());
    for (int i = 1; i <= static_cast<int>(beta.size()); ++i) {
        long b = beta[static_cast<std::size_t>(i - 1)];
        std::vector<Rat> row;
        for (long j = 0; j <= b - 2; ++j) row.push_back(at(i, static_cast<int>(j)) - at(i, static_cast<int>(j + 1)));
        row.push_back(at(i, static_cast<int>(b - 1)) - at(i, 0));
        lam.tuples.push_back(std::move(row));
    }
    return lam;
}

inline DeformationParams pi_map_eval(const GroupParams& g, const std::vector<Rat>& point) {
    GeneratorSet s(g);
    return pi_map_eval(s, point);
}

} // namespace recon
