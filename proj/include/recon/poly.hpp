#pragma once

#include "recon/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recon {

/// Ordered variable list with positive weights.  The list position doubles as
/// the tie-break order for the graded reverse lexicographic comparison.
class VarTable {
public:
    VarTable() = default;
    VarTable(std::vector<std::string> names, std::vector<long> weights)
        : names_(std::move(names)), weights_(std::move(weights)) {
        if (names_.size() != weights_.size())
            throw std::invalid_argument("names/weights size mismatch");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (weights_[i] <= 0) throw std::invalid_argument("variable weights must be positive");
            if (!index_.emplace(names_[i], static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    long weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<long>& weights() const { return weights_; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::out_of_range("unknown variable: " + name);
        return it->second;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

private:
    std::vector<std::string> names_;
    std::vector<long> weights_;
    std::map<std::string, int> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_table(std::vector<std::string> names, std::vector<long> weights) {
    return std::make_shared<const VarTable>(std::move(names), std::move(weights));
}

/// A table extending `base` with extra trailing variables.
inline VarTablePtr extend_table(const VarTablePtr& base, const std::vector<std::string>& names,
                                const std::vector<long>& weights) {
    auto n = base->names();
    auto w = base->weights();
    n.insert(n.end(), names.begin(), names.end());
    w.insert(w.end(), weights.begin(), weights.end());
    return make_table(std::move(n), std::move(w));
}

/// Sparse monomial: (variable index, exponent) pairs sorted by index,
/// exponents strictly positive.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<std::pair<int, std::int64_t>> exps) : exps_(std::move(exps)) {
        std::sort(exps_.begin(), exps_.end());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i].second <= 0) throw std::invalid_argument("monomial exponents must be positive");
            if (i > 0 && exps_[i].first == exps_[i - 1].first)
                throw std::invalid_argument("duplicate variable in monomial");
        }
    }

    static Monomial var(int index, std::int64_t exp = 1) {
        return Monomial(std::vector<std::pair<int, std::int64_t>>{{index, exp}});
    }

    bool is_one() const { return exps_.empty(); }
    const std::vector<std::pair<int, std::int64_t>>& exps() const { return exps_; }

    std::int64_t exp_of(int var) const {
        for (const auto& [v, e] : exps_)
            if (v == var) return e;
        return 0;
    }

    Int weighted_degree(const VarTable& t) const {
        Int d = 0;
        for (const auto& [v, e] : exps_) d += Int(t.weight(v)) * e;
        return d;
    }

    std::int64_t total_degree() const {
        std::int64_t d = 0;
        for (const auto& [v, e] : exps_) d = checked_add(d, e);
        return d;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.exps_ = merge(a.exps_, b.exps_, /*subtract=*/false);
        return r;
    }

    bool divides(const Monomial& other) const {
        for (const auto& [v, e] : exps_)
            if (other.exp_of(v) < e) return false;
        return true;
    }

    /// Quotient other/this; caller must ensure divisibility.
    Monomial divide_into(const Monomial& other) const {
        Monomial r;
        r.exps_ = merge(other.exps_, exps_, /*subtract=*/true);
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.exps_.size() || j < b.exps_.size()) {
            if (j == b.exps_.size() || (i < a.exps_.size() && a.exps_[i].first < b.exps_[j].first))
                r.exps_.push_back(a.exps_[i++]);
            else if (i == a.exps_.size() || b.exps_[j].first < a.exps_[i].first)
                r.exps_.push_back(b.exps_[j++]);
            else {
                r.exps_.emplace_back(a.exps_[i].first, std::max(a.exps_[i].second, b.exps_[j].second));
                ++i, ++j;
            }
        }
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        std::size_t i = 0, j = 0;
        while (i < a.exps_.size() && j < b.exps_.size()) {
            if (a.exps_[i].first == b.exps_[j].first) return false;
            if (a.exps_[i].first < b.exps_[j].first) ++i;
            else ++j;
        }
        return true;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    /// Structural order, used only for canonical container keys.
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

private:
    static std::vector<std::pair<int, std::int64_t>> merge(
        const std::vector<std::pair<int, std::int64_t>>& a,
        const std::vector<std::pair<int, std::int64_t>>& b, bool subtract) {
        std::vector<std::pair<int, std::int64_t>> r;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                if (subtract) throw std::domain_error("monomial division not exact");
                r.push_back(b[j++]);
            } else {
                std::int64_t e = subtract ? a[i].second - b[j].second
                                          : checked_add(a[i].second, b[j].second);
                if (e < 0) throw std::domain_error("monomial division not exact");
                if (e > 0) r.emplace_back(a[i].first, e);
                ++i, ++j;
            }
        }
        return r;
    }

    std::vector<std::pair<int, std::int64_t>> exps_;
};

enum class Ordering { Less, Equal, Greater };

/// Term order over a fixed VarTable.
///  - DegRevLex: weighted degree first, ties broken so the monomial whose
///    trailing exponent vector is smaller (last nonzero of a-b negative) wins.
///  - Lex: first nonzero of a-b positive wins.
///  - BlockElim: compare the designated block of variables first (by weighted
///    degree then reverse lex inside the block), then the remaining variables;
///    this is a genuine elimination order for the block.
struct MonomialOrder {
    enum class Kind { DegRevLex, Lex, BlockElim };

    Kind kind = Kind::DegRevLex;
    VarTablePtr table;
    std::vector<int> block; // BlockElim only: variables eliminated first

    static MonomialOrder degrevlex(VarTablePtr t) { return {Kind::DegRevLex, std::move(t), {}}; }
    static MonomialOrder lex(VarTablePtr t) { return {Kind::Lex, std::move(t), {}}; }
    static MonomialOrder block_elim(VarTablePtr t, std::vector<int> vars) {
        return {Kind::BlockElim, std::move(t), std::move(vars)};
    }

    bool same_as(const MonomialOrder& o) const {
        return kind == o.kind && table == o.table && block == o.block;
    }
};

namespace detail {

/// Dense exponent vector of m over table positions; out-of-table variables
/// mean the monomial belongs to a different ring.
inline std::vector<std::int64_t> dense(const Monomial& m, std::size_t n) {
    std::vector<std::int64_t> v(n, 0);
    for (const auto& [var, e] : m.exps()) v.at(static_cast<std::size_t>(var)) = e;
    return v;
}

inline Ordering revlex_tiebreak(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                const std::vector<int>& positions) {
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
        std::int64_t d = a[static_cast<std::size_t>(*it)] - b[static_cast<std::size_t>(*it)];
        if (d != 0) return d < 0 ? Ordering::Greater : Ordering::Less;
    }
    return Ordering::Equal;
}

} // namespace detail

inline Ordering compare(const MonomialOrder& o, const Monomial& a, const Monomial& b) {
    const VarTable& t = *o.table;
    auto da = detail::dense(a, t.size());
    auto db = detail::dense(b, t.size());

    auto weighted = [&](const std::vector<std::int64_t>& v, const std::vector<int>& pos) {
        Int d = 0;
        for (int p : pos) d += Int(t.weight(p)) * v[static_cast<std::size_t>(p)];
        return d;
    };

    switch (o.kind) {
        case MonomialOrder::Kind::Lex: {
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::int64_t d = da[i] - db[i];
                if (d != 0) return d > 0 ? Ordering::Greater : Ordering::Less;
            }
            return Ordering::Equal;
        }
        case MonomialOrder::Kind::DegRevLex: {
            std::vector<int> all(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) all[i] = static_cast<int>(i);
            Int wa = weighted(da, all), wb = weighted(db, all);
            if (wa != wb) return wa > wb ? Ordering::Greater : Ordering::Less;
            return detail::revlex_tiebreak(da, db, all);
        }
        case MonomialOrder::Kind::BlockElim: {
            std::vector<bool> in_block(t.size(), false);
            for (int v : o.block) in_block[static_cast<std::size_t>(v)] = true;
            std::vector<int> rest;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (!in_block[i]) rest.push_back(static_cast<int>(i));
            Int wa = weighted(da, o.block), wb = weighted(db, o.block);
            if (wa != wb) return wa > wb ? Ordering::Greater : Ordering::Less;
            if (auto r = detail::revlex_tiebreak(da, db, o.block); r != Ordering::Equal) return r;
            wa = weighted(da, rest), wb = weighted(db, rest);
            if (wa != wb) return wa > wb ? Ordering::Greater : Ordering::Less;
            return detail::revlex_tiebreak(da, db, rest);
        }
    }
    return Ordering::Equal;
}

/// Sparse polynomial with exact rational coefficients.  Terms are kept sorted
/// descending under the active order, leading term first; the zero polynomial
/// has no terms.
class Polynomial {
public:
    using Term = std::pair<Rat, Monomial>;

    Polynomial() = default;

    static Polynomial zero() { return {}; }

    static Polynomial constant(const Rat& c) {
        Polynomial p;
        if (c != 0) p.terms_.emplace_back(c, Monomial());
        return p;
    }

    static Polynomial term(const Rat& c, Monomial m, const MonomialOrder&) {
        Polynomial p;
        if (c != 0) p.terms_.emplace_back(c, std::move(m));
        return p;
    }

    static Polynomial from_terms(std::vector<Term> terms, const MonomialOrder& o) {
        Polynomial p;
        p.terms_ = normalize(std::move(terms), o);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    const Term& leading(const char* who = "leading term") const {
        if (terms_.empty()) throw std::domain_error(std::string(who) + " of zero polynomial");
        return terms_.front();
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].second.is_one()); }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_[0].first;
    }

    bool involves(int var) const {
        for (const auto& [c, m] : terms_)
            if (m.exp_of(var) != 0) return true;
        return false;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    friend Polynomial add(const Polynomial& f, const Polynomial& g, const MonomialOrder& o) {
        std::vector<Term> out;
        out.reserve(f.terms_.size() + g.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < f.terms_.size() || j < g.terms_.size()) {
            if (j == g.terms_.size()) { out.push_back(f.terms_[i++]); continue; }
            if (i == f.terms_.size()) { out.push_back(g.terms_[j++]); continue; }
            Ordering c = compare(o, f.terms_[i].second, g.terms_[j].second);
            if (c == Ordering::Greater) out.push_back(f.terms_[i++]);
            else if (c == Ordering::Less) out.push_back(g.terms_[j++]);
            else {
                Rat s = f.terms_[i].first + g.terms_[j].first;
                if (s != 0) out.emplace_back(s, f.terms_[i].second);
                ++i, ++j;
            }
        }
        Polynomial r;
        r.terms_ = std::move(out);
        return r;
    }

    friend Polynomial negate(const Polynomial& f) {
        Polynomial r = f;
        for (auto& t : r.terms_) t.first = -t.first;
        return r;
    }

    friend Polynomial sub(const Polynomial& f, const Polynomial& g, const MonomialOrder& o) {
        return add(f, negate(g), o);
    }

    friend Polynomial scale(const Rat& c, const Polynomial& f) {
        if (c == 0) return {};
        Polynomial r = f;
        for (auto& t : r.terms_) t.first *= c;
        return r;
    }

    /// Multiply by a single term; order of terms is preserved.
    friend Polynomial mul_term(const Polynomial& f, const Rat& c, const Monomial& m) {
        if (c == 0) return {};
        Polynomial r;
        r.terms_.reserve(f.terms_.size());
        for (const auto& [fc, fm] : f.terms_) r.terms_.emplace_back(fc * c, fm * m);
        return r;
    }

    friend Polynomial mul(const Polynomial& f, const Polynomial& g, const MonomialOrder& o) {
        std::vector<Term> out;
        out.reserve(f.terms_.size() * g.terms_.size());
        for (const auto& [fc, fm] : f.terms_)
            for (const auto& [gc, gm] : g.terms_) out.emplace_back(fc * gc, fm * gm);
        return from_terms(std::move(out), o);
    }

    /// Replace variable `var` by `value` everywhere; `var` disappears entirely.
    friend Polynomial substitute(const Polynomial& f, int var, const Polynomial& value,
                                 const MonomialOrder& o) {
        Polynomial out;
        for (const auto& [c, m] : f.terms_) {
            std::int64_t e = m.exp_of(var);
            std::vector<std::pair<int, std::int64_t>> rest;
            for (const auto& ve : m.exps())
                if (ve.first != var) rest.push_back(ve);
            Polynomial piece = term(c, Monomial(std::move(rest)), o);
            for (std::int64_t k = 0; k < e; ++k) piece = mul(piece, value, o);
            out = add(out, piece, o);
        }
        return out;
    }

    /// Formal partial derivative with respect to `var`.
    friend Polynomial derivative(const Polynomial& f, int var, const MonomialOrder& o) {
        std::vector<Term> out;
        for (const auto& [c, m] : f.terms_) {
            std::int64_t e = m.exp_of(var);
            if (e == 0) continue;
            std::vector<std::pair<int, std::int64_t>> exps;
            for (const auto& ve : m.exps()) {
                if (ve.first == var) {
                    if (ve.second > 1) exps.emplace_back(ve.first, ve.second - 1);
                } else {
                    exps.push_back(ve);
                }
            }
            out.emplace_back(c * Rat(e), Monomial(std::move(exps)));
        }
        return from_terms(std::move(out), o);
    }

    /// True when all terms share one weighted degree (or f = 0).
    bool is_homogeneous(const VarTable& t) const {
        if (terms_.empty()) return true;
        Int d = terms_[0].second.weighted_degree(t);
        for (const auto& [c, m] : terms_)
            if (m.weighted_degree(t) != d) return false;
        return true;
    }

    /// Re-sort terms under a different order.
    Polynomial resorted(const MonomialOrder& o) const {
        return from_terms(terms_, o);
    }

private:
    static std::vector<Term> normalize(std::vector<Term> terms, const MonomialOrder& o) {
        std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
            return compare(o, x.second, y.second) == Ordering::Greater;
        });
        std::vector<Term> out;
        for (auto& t : terms) {
            if (!out.empty() && out.back().second == t.second) out.back().first += t.first;
            else out.push_back(std::move(t));
            if (!out.empty() && out.back().first == 0) out.pop_back();
        }
        return out;
    }

    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Text form: sum of c*v1^e1*...*vk^ek terms, deterministic under the active
// order.  The parser accepts the same grammar (used by fixtures).
// ---------------------------------------------------------------------------

inline std::string to_string(const Monomial& m, const VarTable& t) {
    if (m.is_one()) return "1";
    std::string s;
    for (const auto& [v, e] : m.exps()) {
        if (!s.empty()) s += "*";
        s += t.name(v);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string to_string(const Polynomial& f, const VarTable& t) {
    if (f.is_zero()) return "0";
    std::string s;
    for (const auto& [c, m] : f.terms()) {
        Rat ac = c < 0 ? Rat(-c) : c;
        std::string coeff = to_string(ac);
        std::string mono = to_string(m, t);
        std::string piece;
        if (mono == "1") piece = coeff;
        else if (coeff == "1") piece = mono;
        else piece = coeff + "*" + mono;
        if (s.empty()) s = (c < 0 ? "-" : "") + piece;
        else s += (c < 0 ? " - " : " + ") + piece;
    }
    return s;
}

namespace detail {

struct PolyLexer {
    std::string s;
    std::size_t pos = 0;

    void skip() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    std::optional<std::string> ident() {
        skip();
        if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            return std::nullopt;
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        return s.substr(start, pos - start);
    }

    std::optional<Int> integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        return Int(s.substr(start, pos - start));
    }
};

} // namespace detail

/// Parse the printer's grammar: ["-"] term {("+"|"-") term} where each term is
/// a "*"-separated product of an optional rational and variables with optional
/// "^e" powers.
inline Polynomial parse_polynomial(const std::string& text, const MonomialOrder& o) {
    detail::PolyLexer lx{text};
    std::vector<Polynomial::Term> terms;
    bool first = true;
    while (true) {
        lx.skip();
        if (lx.pos >= lx.s.size()) break;
        bool neg = false;
        if (lx.eat('-')) neg = true;
        else if (lx.eat('+')) neg = false;
        else if (!first) throw std::invalid_argument("expected +/- in polynomial: " + text);
        first = false;

        Rat coeff(1);
        std::vector<std::pair<int, std::int64_t>> exps;
        bool any = false;
        while (true) {
            if (auto n = lx.integer()) {
                Rat c(*n);
                if (lx.eat('/')) {
                    auto d = lx.integer();
                    if (!d || *d == 0) throw std::invalid_argument("bad rational in: " + text);
                    c /= Rat(*d);
                }
                coeff *= c;
                any = true;
            } else if (auto name = lx.ident()) {
                std::int64_t e = 1;
                if (lx.eat('^')) {
                    auto p = lx.integer();
                    if (!p) throw std::invalid_argument("bad exponent in: " + text);
                    e = static_cast<std::int64_t>(*p);
                }
                int idx = o.table->index_of(*name);
                bool merged = false;
                for (auto& [v, ex] : exps)
                    if (v == idx) { ex = checked_add(ex, e); merged = true; break; }
                if (!merged) exps.emplace_back(idx, e);
                any = true;
            } else {
                throw std::invalid_argument("expected factor in polynomial: " + text);
            }
            if (!lx.eat('*')) break;
        }
        if (!any) throw std::invalid_argument("empty term in polynomial: " + text);
        if (neg) coeff = -coeff;
        terms.emplace_back(coeff, Monomial(std::move(exps)));
    }
    return Polynomial::from_terms(std::move(terms), o);
}

/// Rewrite f over a target table (used to drop eliminated variables).  Every
/// variable occurring in f must exist in the target table.
inline Polynomial retable(const Polynomial& f, const VarTable& from, const MonomialOrder& to) {
    std::vector<Polynomial::Term> terms;
    for (const auto& [c, m] : f.terms()) {
        std::vector<std::pair<int, std::int64_t>> exps;
        for (const auto& [v, e] : m.exps())
            exps.emplace_back(to.table->index_of(from.name(v)), e);
        terms.emplace_back(c, Monomial(std::move(exps)));
    }
    return Polynomial::from_terms(std::move(terms), to);
}

} // namespace recon
