#pragma once

#include "recon/numeric.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace recon {

/// The cyclic group 1/r(1,a), i.e. the quotient surface singularity it defines.
struct GroupParams {
    long r = 0;
    long a = 0;

    GroupParams() = default;
    GroupParams(long r_, long a_) : r(r_), a(a_) {
        if (r <= a || a < 1) throw std::invalid_argument("group 1/r(1,a) needs r > a >= 1");
        if (std::gcd(r, a) != 1) throw std::invalid_argument("group 1/r(1,a) needs gcd(r,a) = 1");
    }
};

/// Continued fraction p/q = t1 - 1/(t2 - 1/(...)) with every term >= 2.
struct HJExpansion {
    long numerator = 0;
    long denominator = 0;
    std::vector<long> terms;
};

inline HJExpansion hj_expand(long p, long q) {
    if (p <= q || q < 1) throw std::invalid_argument("hj_expand needs p > q >= 1");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("hj_expand needs gcd(p,q) = 1");
    HJExpansion e;
    e.numerator = p;
    e.denominator = q;
    while (q > 0) {
        long t = (p + q - 1) / q; // ceil(p/q)
        e.terms.push_back(t);
        long next_q = t * q - p;  // p/q = t - next_q/q
        p = q;
        q = next_q;
    }
    return e;
}

/// Evaluate the expansion back to an exact fraction (round-trip check).
inline Rat hj_evaluate(const std::vector<long>& terms) {
    if (terms.empty()) throw std::invalid_argument("empty expansion");
    Rat v(terms.back());
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
        if (v == 0) throw std::domain_error("expansion evaluates through zero");
        v = Rat(*it) - Rat(1) / v;
    }
    return v;
}

/// Expansion of r/(r-a), written [b1,...,bm] in the dual convention.
inline HJExpansion hj_dual(const GroupParams& g) { return hj_expand(g.r, g.r - g.a); }

/// The recursively defined pair of sequences attached to the dual expansion:
/// i0 = r, i1 = r-a, j0 = 0, j1 = 1, and x_t = b_{t-1} x_{t-1} - x_{t-2}.
struct IJSeries {
    std::vector<long> i_seq; // strictly decreasing, ends at 0
    std::vector<long> j_seq; // strictly increasing, ends at r
};

inline IJSeries ij_series(const GroupParams& g) {
    auto beta = hj_dual(g).terms;
    std::size_t m = beta.size();
    IJSeries s;
    s.i_seq.resize(m + 2);
    s.j_seq.resize(m + 2);
    s.i_seq[0] = g.r;
    s.i_seq[1] = g.r - g.a;
    s.j_seq[0] = 0;
    s.j_seq[1] = 1;
    for (std::size_t t = 2; t <= m + 1; ++t) {
        s.i_seq[t] = beta[t - 2] * s.i_seq[t - 1] - s.i_seq[t - 2];
        s.j_seq[t] = beta[t - 2] * s.j_seq[t - 1] - s.j_seq[t - 2];
    }
    if (s.i_seq.back() != 0 || s.j_seq.back() != g.r)
        throw std::logic_error("series recursion failed boundary identities");
    return s;
}

/// Exponent pairs (i_t, j_t) of the monomials generating the invariant ring.
inline std::vector<std::pair<long, long>> invariant_monomials(const GroupParams& g) {
    auto s = ij_series(g);
    std::vector<std::pair<long, long>> out;
    out.reserve(s.i_seq.size());
    for (std::size_t t = 0; t < s.i_seq.size(); ++t) out.emplace_back(s.i_seq[t], s.j_seq[t]);
    return out;
}

inline long embedding_dimension(const GroupParams& g) {
    long m = static_cast<long>(hj_dual(g).terms.size());
    long via_alpha = 3;
    for (long t : hj_expand(g.r, g.a).terms) via_alpha += t - 2;
    if (m + 2 != via_alpha) throw std::logic_error("embedding dimension identities disagree");
    return m + 2;
}

enum class ArrowKind { Clockwise, Anticlockwise, Extra };

struct Arrow {
    ArrowKind kind;
    int tail;
    int head;
    std::string label;
};

/// Quiver of the reconstruction algebra: one oriented cycle each way on
/// vertices 0..n, plus extra arrows into vertex 0.  For a = 1 the shape
/// degenerates to two vertices with parallel arrows c1, c2 one way and
/// a1, a2, k1..k_{r-2} the other.
struct Quiver {
    int n = 0;                    // last non-extended vertex
    bool degenerate = false;      // a == 1
    std::vector<Arrow> arrows;
    std::vector<int> tail_table;  // l_0 .. l_{e-2}

    int arrow_index(const std::string& label) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].label == label) return static_cast<int>(i);
        throw std::out_of_range("no arrow labelled " + label);
    }

    int vertex_count() const { return degenerate ? 2 : n + 1; }
};

inline std::string arrow_label(ArrowKind kind, int tail, int head) {
    switch (kind) {
        case ArrowKind::Clockwise: return "c" + std::to_string(tail) + "_" + std::to_string(head);
        case ArrowKind::Anticlockwise: return "a" + std::to_string(tail) + "_" + std::to_string(head);
        case ArrowKind::Extra: return "k" + std::to_string(tail);
    }
    return {};
}

inline Quiver build_quiver(const GroupParams& g) {
    Quiver q;
    auto alpha = hj_expand(g.r, g.a).terms;

    if (g.a == 1) {
        // Two vertices, parallel arrows; extra arrows all have tail 1.
        q.n = 1;
        q.degenerate = true;
        q.arrows.push_back({ArrowKind::Clockwise, 0, 1, "c1"});
        q.arrows.push_back({ArrowKind::Clockwise, 0, 1, "c2"});
        q.arrows.push_back({ArrowKind::Anticlockwise, 1, 0, "a1"});
        q.arrows.push_back({ArrowKind::Anticlockwise, 1, 0, "a2"});
        for (long h = 1; h <= g.r - 2; ++h)
            q.arrows.push_back({ArrowKind::Extra, 1, 0, "k" + std::to_string(h)});
        q.tail_table.assign(static_cast<std::size_t>(g.r), 1); // l_0 .. l_{e-2}, e = r+1
        return q;
    }

    int n = static_cast<int>(alpha.size());
    q.n = n;
    // Clockwise cycle: c_{i,i-1} for i = 1..n together with c_{0,n}.
    for (int i = 1; i <= n; ++i)
        q.arrows.push_back({ArrowKind::Clockwise, i, i - 1, arrow_label(ArrowKind::Clockwise, i, i - 1)});
    q.arrows.push_back({ArrowKind::Clockwise, 0, n, arrow_label(ArrowKind::Clockwise, 0, n)});
    // Anticlockwise cycle: a_{i,i+1} for i = 0..n-1 together with a_{n,0}.
    for (int i = 0; i < n; ++i)
        q.arrows.push_back({ArrowKind::Anticlockwise, i, i + 1, arrow_label(ArrowKind::Anticlockwise, i, i + 1)});
    q.arrows.push_back({ArrowKind::Anticlockwise, n, 0, arrow_label(ArrowKind::Anticlockwise, n, 0)});
    // Extra arrows, alpha_i - 2 at vertex i, numbered with increasing tail.
    q.tail_table.push_back(1); // l_0, the alias k_0 = c_{1,0}
    int h = 1;
    for (int i = 1; i <= n; ++i) {
        for (long extra = 0; extra < alpha[static_cast<std::size_t>(i - 1)] - 2; ++extra) {
            q.arrows.push_back({ArrowKind::Extra, i, 0, "k" + std::to_string(h)});
            q.tail_table.push_back(i);
            ++h;
        }
    }
    q.tail_table.push_back(n); // l_{e-2}, the alias k_{e-2} = a_{n,0}
    return q;
}

} // namespace recon
