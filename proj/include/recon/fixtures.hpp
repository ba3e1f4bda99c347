#pragma once

#include "recon/artin.hpp"
#include "recon/deform.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace recon {
namespace fixtures {

struct FixtureResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline IntMatrix matrix_from(std::vector<std::vector<long>> rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

/// Equality up to a global sign on each column.
inline bool equal_up_to_column_sign(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        bool same = true, flipped = true;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (a(r, c) != b(r, c)) same = false;
            if (a(r, c) != -b(r, c)) flipped = false;
        }
        if (!same && !flipped) return false;
    }
    return true;
}

inline FixtureResult check(const std::string& name, const std::function<bool(std::string&)>& body) {
    FixtureResult res;
    res.name = name;
    try {
        res.pass = body(res.detail);
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    return res;
}

inline bool expect(std::string& detail, bool cond, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

} // namespace detail

/// Quiver of 1/7(1,3): four vertices, one extra arrow k1 with tail 1.
inline FixtureResult quiver_7_3() {
    return detail::check("quiver 1/7(1,3)", [](std::string& d) {
        Quiver q = build_quiver(GroupParams(7, 3));
        bool ok = true;
        ok &= detail::expect(d, q.n == 3, "expected 4 vertices");
        ok &= detail::expect(d, q.arrows.size() == 9, "expected 9 arrows");
        std::vector<std::string> expected = {"c1_0", "c2_1", "c3_2", "c0_3", "a0_1",
                                             "a1_2", "a2_3", "a3_0", "k1"};
        for (const auto& label : expected)
            ok &= detail::expect(d, q.arrow_index(label) >= 0, "missing arrow " + label);
        ok &= detail::expect(d, q.tail_table == std::vector<int>({1, 1, 3}), "tail table");
        ok &= detail::expect(d, q.arrows[static_cast<std::size_t>(q.arrow_index("k1"))].tail == 1,
                             "k1 tail");
        return ok;
    });
}

/// Quiver of 1/165(1,104): eight vertices, extras k1..k4 with tails 2,4,4,5.
inline FixtureResult quiver_165_104() {
    return detail::check("quiver 1/165(1,104)", [](std::string& d) {
        Quiver q = build_quiver(GroupParams(165, 104));
        bool ok = true;
        ok &= detail::expect(d, q.n == 7, "expected 8 vertices");
        ok &= detail::expect(d, q.tail_table == std::vector<int>({1, 2, 4, 4, 5, 7}), "tail table");
        ok &= detail::expect(d, q.arrows.size() == 2 * 8 + 4, "arrow count");
        return ok;
    });
}

/// Generator set of 1/7(1,3): the eight cycles, with the printed images.
inline FixtureResult generators_7_3() {
    return detail::check("generators 1/7(1,3)", [](std::string& d) {
        GeneratorSet s(GroupParams(7, 3));
        bool ok = detail::expect(d, s.vars().size() == 8, "expected 8 generators");
        auto img = [&](int i, int j) { return to_string(s.image({i, j}), *s.arrow_table()); };
        ok &= detail::expect(d, img(0, 0) == "c1_0*c2_1*c3_2*c0_3", "z0_0 image " + img(0, 0));
        ok &= detail::expect(d, img(1, 0) == "c2_1*c3_2*c0_3*k1", "z1_0 image " + img(1, 0));
        ok &= detail::expect(d, img(1, 1) == "c1_0*a0_1", "z1_1 image " + img(1, 1));
        ok &= detail::expect(d, img(2, 0) == "c0_3*a3_0", "z2_0 image " + img(2, 0));
        ok &= detail::expect(d, img(2, 1) == "c3_2*a2_3", "z2_1 image " + img(2, 1));
        ok &= detail::expect(d, img(2, 2) == "c2_1*a1_2", "z2_2 image " + img(2, 2));
        ok &= detail::expect(d, img(2, 3) == "a0_1*k1", "z2_3 image " + img(2, 3));
        ok &= detail::expect(d, img(3, 0) == "a0_1*a1_2*a2_3*a3_0", "z3_0 image " + img(3, 0));
        return ok;
    });
}

/// Generator set of 1/165(1,104): 18 generators ending at z6_0.
inline FixtureResult generators_165_104() {
    return detail::check("generators 1/165(1,104)", [](std::string& d) {
        GeneratorSet s(GroupParams(165, 104));
        bool ok = detail::expect(d, s.vars().size() == 18, "expected 18 generators");
        ok &= detail::expect(d, s.vars().back() == ZVar{6, 0}, "last generator should be z6_0");
        long sum_beta = 0;
        for (long b : hj_dual(GroupParams(165, 104)).terms) sum_beta += b;
        ok &= detail::expect(d, sum_beta + 2 == 18, "2 + sum beta_i");
        return ok;
    });
}

/// QDet of 1/7(1,3): the three printed quasiminors.
inline FixtureResult qdet_7_3() {
    return detail::check("qdet 1/7(1,3)", [](std::string& d) {
        GeneratorSet s(GroupParams(7, 3));
        IdealBasis q = qdet_ideal(s);
        bool ok = detail::expect(d, q.gens.size() == 3, "expected 3 quasiminors");
        auto has = [&](const std::string& text) {
            Polynomial f = parse_polynomial(text, s.z_order());
            for (const auto& g : q.gens)
                if (g == f || g == negate(f)) return true;
            return false;
        };
        ok &= detail::expect(d, has("z0_0*z2_3 - z1_0*z1_1"), "missing first quasiminor");
        ok &= detail::expect(d, has("z0_0*z3_0 - z2_0*z2_1*z2_2*z1_1"), "missing second quasiminor");
        ok &= detail::expect(d, has("z1_0*z3_0 - z2_0*z2_1*z2_2*z2_3"), "missing third quasiminor");
        return ok;
    });
}

/// QDet of 1/165(1,104) consists of 15 relations.
inline FixtureResult qdet_165_104() {
    return detail::check("qdet 1/165(1,104)", [](std::string& d) {
        IdealBasis q = qdet_ideal(GroupParams(165, 104));
        return detail::expect(d, q.gens.size() == 15, "expected 15 relations, got " +
                                                          std::to_string(q.gens.size()));
    });
}

/// Matrix M of 1/3(1,1): the printed 5x6 matrix.
inline FixtureResult matrix_m_3_1() {
    return detail::check("matrix M 1/3(1,1)", [](std::string& d) {
        auto b = build_exponent_matrices(GeneratorSet(GroupParams(3, 1)));
        bool ok = detail::expect(d, b.row_labels == std::vector<std::string>({"k1", "a2", "a1", "c1", "c2"}),
                                 "row labels");
        ok &= detail::expect(d,
                             b.col_labels == std::vector<std::string>(
                                                 {"z3_0", "z2_1", "z1_1", "z0_0", "z1_0", "z2_0"}),
                             "column labels");
        IntMatrix expected = detail::matrix_from({{1, 0, 0, 0, 0, 1},
                                                  {0, 1, 0, 0, 1, 0},
                                                  {0, 0, 1, 1, 0, 0},
                                                  {0, 0, 0, 1, 1, 1},
                                                  {1, 1, 1, 0, 0, 0}});
        ok &= detail::expect(d, b.m == expected, "matrix entries");
        return ok;
    });
}

/// Matrix M of 1/7(1,2): the printed 8x9 matrix.
inline FixtureResult matrix_m_7_2() {
    return detail::check("matrix M 1/7(1,2)", [](std::string& d) {
        auto b = build_exponent_matrices(GeneratorSet(GroupParams(7, 2)));
        bool ok = detail::expect(
            d,
            b.row_labels == std::vector<std::string>({"k2", "k1", "a0_1", "a1_2", "a2_0", "c0_2",
                                                      "c2_1", "c1_0"}),
            "row labels");
        ok &= detail::expect(d,
                             b.col_labels == std::vector<std::string>({"z3_2", "z2_1", "z1_1", "z3_1",
                                                                       "z3_0", "z0_0", "z4_0", "z1_0",
                                                                       "z2_0"}),
                             "column labels");
        IntMatrix expected = detail::matrix_from({{1, 0, 0, 0, 0, 0, 0, 0, 1},
                                                  {0, 1, 0, 0, 0, 0, 0, 1, 0},
                                                  {1, 1, 1, 0, 0, 0, 1, 0, 0},
                                                  {0, 0, 0, 1, 0, 0, 1, 0, 0},
                                                  {0, 0, 0, 0, 1, 0, 1, 0, 0},
                                                  {0, 0, 0, 0, 1, 1, 0, 1, 1},
                                                  {0, 0, 0, 1, 0, 1, 0, 1, 1},
                                                  {0, 0, 1, 0, 0, 1, 0, 0, 0}});
        ok &= detail::expect(d, b.m == expected, "matrix entries");
        return ok;
    });
}

/// Matrix K of 1/7(1,2): the printed 9x3 matrix, up to column sign.
inline FixtureResult matrix_k_7_2() {
    return detail::check("matrix K 1/7(1,2)", [](std::string& d) {
        auto b = build_exponent_matrices(GeneratorSet(GroupParams(7, 2)));
        IntMatrix printed = detail::matrix_from({{0, 0, -1},
                                                 {0, -1, 0},
                                                 {-1, 1, 1},
                                                 {-1, 0, 0},
                                                 {-1, 0, 0},
                                                 {1, -1, -1},
                                                 {1, 0, 0},
                                                 {0, 1, 0},
                                                 {0, 0, 1}});
        bool ok = detail::expect(d, detail::equal_up_to_column_sign(b.k, printed),
                                 "K differs beyond column signs");
        ok &= detail::expect(d, (b.m * b.k).is_zero(), "M*K != 0");
        ok &= detail::expect(d, same_column_span_Z(integer_kernel(b.m), b.k), "kernel span");
        return ok;
    });
}

/// Deformed relations of 1/7(1,3): the two pinned relations of the printed
/// list, with lambda symbolic in Delta.
inline FixtureResult deformed_7_3() {
    return detail::check("deformed relations 1/7(1,3)", [](std::string& d) {
        GeneratorSet s(GroupParams(7, 3));
        DeformedRelations rels = deformed_relations(s, SymbolicDelta{});
        bool ok = detail::expect(d, rels.steps.size() == 2, "two steps");
        ok &= detail::expect(d, rels.steps[0].relations.size() == 2, "step 1 has 2 relations");
        ok &= detail::expect(d, rels.steps[1].relations.size() == 4, "step 2 has 4 relations");
        // k1 C01 = c10 a01 + lam11, i.e. k1*c01-product - c10*a01 - lam1_1 = 0.
        Polynomial r11 = parse_polynomial("k1*c0_3*c3_2*c2_1 - c1_0*a0_1 - lam1_1", rels.order);
        ok &= detail::expect(d, rels.steps[0].relations[0] == r11, "step 1 leading relation");
        // a01 k1 = c03 a30 - (lam21+lam22+lam23).
        Polynomial r20 = parse_polynomial("a0_1*k1 - c0_3*a3_0 + lam2_1 + lam2_2 + lam2_3", rels.order);
        ok &= detail::expect(d, rels.steps[1].relations[3] == r20, "step 2 closing relation");
        return ok;
    });
}

/// Deformed relations of 1/165(1,104): the pinned first relation
/// k1 C02 = c21 a12 + lam12, plus the step shape.
inline FixtureResult deformed_165_104() {
    return detail::check("deformed relations 1/165(1,104)", [](std::string& d) {
        GeneratorSet s(GroupParams(165, 104));
        DeformedRelations rels = deformed_relations(s, SymbolicDelta{});
        bool ok = detail::expect(d, rels.steps.size() == 5, "five steps");
        std::vector<std::size_t> sizes;
        for (const auto& st : rels.steps) sizes.push_back(st.relations.size());
        ok &= detail::expect(d, sizes == std::vector<std::size_t>({3, 4, 2, 3, 4}),
                             "step sizes should match beta");
        Polynomial r12 = parse_polynomial("k1*c0_7*c7_6*c6_5*c5_4*c4_3*c3_2 - c2_1*a1_2 - lam1_2",
                                          rels.order);
        ok &= detail::expect(d, rels.steps[0].relations[0] == r12, "step 1 leading relation");
        return ok;
    });
}

/// The alternative-stability chart of 1/3(1,1): normalising a1 = 1 leaves the
/// principal residual c1(k1 - a2^2), which is singular at the origin.
inline FixtureResult remark_chart_3_1() {
    return detail::check("singular chart 1/3(1,1)", [](std::string& d) {
        GeneratorSet s(GroupParams(3, 1));
        Chart chart = chart_eliminate_custom(s, {"a1"}, zero_lambda(GroupParams(3, 1)));
        bool ok = detail::expect(d, chart.residual.size() == 1, "residual should be principal");
        if (!ok) return false;
        VarTablePtr three = make_table({"c1", "a2", "k1"}, {1, 1, 1});
        MonomialOrder o3 = MonomialOrder::degrevlex(three);
        Polynomial res = retable(chart.residual[0], *chart.table, o3);
        Polynomial expected = parse_polynomial("c1*k1 - c1*a2^2", o3);
        ok &= detail::expect(d, res == expected || res == negate(expected),
                             "residual is not c1(k1 - a2^2)");
        IdealBasis ideal({expected}, o3);
        ok &= detail::expect(d, jacobian_singular_at(ideal, {Rat(0), Rat(0), Rat(0)}),
                             "origin should be singular");
        // The standard charts of the same group certify smooth planes.
        for (int t : {1, 2}) {
            Chart w = chart_eliminate(s, t, SymbolicDelta{});
            ok &= detail::expect(d, w.certified_affine_plane(), "standard chart not affine");
        }
        return ok;
    });
}

/// E for 1/7(1,2) is the printed product z0_0 z2_1 z3_2 z4_0.
inline FixtureResult saturator_7_2() {
    return detail::check("saturating product 1/7(1,2)", [](std::string& d) {
        GeneratorSet s(GroupParams(7, 2));
        std::string e = to_string(saturating_product_E(s), *s.z_table());
        return detail::expect(d, e == "z0_0*z2_1*z3_2*z4_0", "got " + e);
    });
}

inline std::vector<FixtureResult> run_all() {
    return {
        quiver_7_3(),     quiver_165_104(),   generators_7_3(), generators_165_104(),
        qdet_7_3(),       qdet_165_104(),     matrix_m_3_1(),   matrix_m_7_2(),
        matrix_k_7_2(),   deformed_7_3(),     deformed_165_104(), remark_chart_3_1(),
        saturator_7_2(),
    };
}

} // namespace fixtures
} // namespace recon
