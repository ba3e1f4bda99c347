// Command-line front end: every library operation behind one executable, with
// deterministic text/JSON output and the paper-object fixture replay.

#include "recon/artin.hpp"
#include "recon/deform.hpp"
#include "recon/fixtures.hpp"
#include "recon/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace recon;

constexpr std::uint64_t kDefaultSeed = 20260810;

struct Options {
    long r = 0;
    long a = 0;
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
};

bool json_mode(const Options& o) { return o.format == "json"; }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string render_matrix(const IntMatrix& m, const std::vector<std::string>& row_labels,
                          const std::vector<std::string>& col_labels) {
    std::size_t width = 1;
    for (const auto& l : col_labels) width = std::max(width, l.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) width = std::max(width, m(r, c).str().size());
    std::size_t label_width = 0;
    for (const auto& l : row_labels) label_width = std::max(label_width, l.size());

    std::ostringstream out;
    out << std::string(label_width + 2, ' ');
    for (const auto& l : col_labels) out << std::setw(static_cast<int>(width) + 1) << l;
    out << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << std::setw(static_cast<int>(label_width)) << row_labels[r] << "  ";
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << std::setw(static_cast<int>(width) + 1) << m(r, c).str();
        out << "\n";
    }
    return out.str();
}

/// Three-row quasimatrix layout: top entries, interstitial middle products,
/// bottom entries.
std::string render_quasimatrix(const GeneratorSet& s) {
    QuasiMatrix q = quasimatrix(s);
    std::size_t cols = q.top.size();
    std::vector<std::string> top, mid, bot;
    for (std::size_t t = 0; t < cols; ++t) {
        top.push_back(q.top[t].name());
        bot.push_back(q.bottom[t].name());
    }
    for (const auto& w : q.middle) {
        std::string prod;
        for (const auto& z : w) prod += (prod.empty() ? "" : "*") + z.name();
        mid.push_back(prod.empty() ? "1" : prod);
    }
    std::size_t cell = 4;
    for (const auto& v : {top, mid, bot})
        for (const auto& e : v) cell = std::max(cell, e.size() + 2);

    auto pad_at = [&](std::string& line, std::size_t pos, const std::string& text) {
        if (line.size() < pos) line += std::string(pos - line.size(), ' ');
        line += text;
    };
    std::string l1, l2, l3;
    for (std::size_t t = 0; t < cols; ++t) {
        pad_at(l1, t * cell, top[t]);
        pad_at(l3, t * cell, bot[t]);
    }
    for (std::size_t t = 0; t + 1 < cols; ++t) pad_at(l2, t * cell + cell / 2, mid[t]);
    return l1 + "\n" + l2 + "\n" + l3 + "\n";
}

GroupParams group_of(const Options& o) { return GroupParams(o.r, o.a); }

int cmd_hj(const Options& o) {
    GroupParams g = group_of(o);
    auto alpha = hj_expand(g.r, g.a);
    auto beta = hj_dual(g);
    if (json_mode(o)) {
        Json j = json_doc("hj");
        j["r"] = g.r;
        j["a"] = g.a;
        j["alpha"] = alpha.terms;
        j["beta"] = beta.terms;
        j["embedding_dimension"] = embedding_dimension(g);
        emit(j);
    } else {
        auto show = [](const std::vector<long>& terms) {
            std::string s = "[";
            for (std::size_t i = 0; i < terms.size(); ++i)
                s += (i ? "," : "") + std::to_string(terms[i]);
            return s + "]";
        };
        std::cout << g.r << "/" << g.a << " = " << show(alpha.terms) << "\n";
        std::cout << g.r << "/" << (g.r - g.a) << " = " << show(beta.terms) << "\n";
        std::cout << "e = " << embedding_dimension(g) << "\n";
    }
    return 0;
}

int cmd_quiver(const Options& o) {
    Quiver q = build_quiver(group_of(o));
    if (json_mode(o)) {
        Json j = json_doc("quiver");
        j["r"] = o.r;
        j["a"] = o.a;
        j["quiver"] = to_json(q);
        emit(j);
    } else {
        std::cout << "vertices: 0.." << q.vertex_count() - 1 << "\n";
        for (const auto& a : q.arrows)
            std::cout << "  " << std::setw(6) << a.label << "  " << to_string(a.kind) << "  " << a.tail
                      << " -> " << a.head << "\n";
        std::cout << "tail table l_h:";
        for (int l : q.tail_table) std::cout << " " << l;
        std::cout << "\n";
    }
    return 0;
}

int cmd_generators(const Options& o) {
    GeneratorSet s(group_of(o));
    if (json_mode(o)) {
        Json j = json_doc("generators");
        j["r"] = o.r;
        j["a"] = o.a;
        Json gens = Json::array();
        for (const auto& z : s.vars()) {
            Json e;
            e["name"] = z.name();
            e["i"] = z.i;
            e["j"] = z.j;
            e["image"] = to_string(s.image(z), *s.arrow_table());
            e["degree"] = s.z_table()->weight(s.z_index(z));
            gens.push_back(e);
        }
        j["generators"] = gens;
        emit(j);
    } else {
        for (const auto& z : s.vars())
            std::cout << std::setw(6) << z.name() << "  deg " << std::setw(4)
                      << s.z_table()->weight(s.z_index(z)) << "  -> "
                      << to_string(s.image(z), *s.arrow_table()) << "\n";
    }
    return 0;
}

int cmd_qdet(const Options& o) {
    GeneratorSet s(group_of(o));
    IdealBasis q = qdet_ideal(s);
    if (json_mode(o)) {
        Json j = json_doc("qdet");
        j["r"] = o.r;
        j["a"] = o.a;
        j["ideal"] = to_json(q);
        j["saturating_product"] = to_string(saturating_product_E(s), *s.z_table());
        emit(j);
    } else {
        std::cout << render_quasimatrix(s) << "\n";
        for (const auto& f : q.gens) std::cout << to_string(f, *s.z_table()) << "\n";
        std::cout << "E = " << to_string(saturating_product_E(s), *s.z_table()) << "\n";
    }
    return 0;
}

int cmd_matrix(const Options& o, bool want_k) {
    GeneratorSet s(group_of(o));
    auto b = build_exponent_matrices(s);
    if (json_mode(o)) {
        Json j = json_doc(want_k ? "matrix-k" : "matrix-m");
        j["r"] = o.r;
        j["a"] = o.a;
        j["bundle"] = to_json(b, /*include_q=*/true);
        emit(j);
    } else if (want_k) {
        std::vector<std::string> rel_labels;
        for (std::size_t c = 0; c < b.k.cols(); ++c) rel_labels.push_back("rel" + std::to_string(c + 1));
        std::cout << render_matrix(b.k, b.col_labels, rel_labels);
    } else {
        std::cout << render_matrix(b.m, b.row_labels, b.col_labels);
    }
    return 0;
}

int cmd_verify(const Options& o, const std::string& mode) {
    VerifyMode m = mode == "full_oracle" ? VerifyMode::FullOracle : VerifyMode::BuchbergerOnly;
    TheoremReport rep = verify_theorem(group_of(o), m);
    if (json_mode(o)) {
        Json j = json_doc("verify");
        j["report"] = to_json(rep);
        emit(j);
    } else {
        std::cout << "group 1/" << o.r << "(1," << o.a << ") mode "
                  << (m == VerifyMode::FullOracle ? "full_oracle" : "buchberger_only") << "\n"
                  << "  phi(QDet) = 0:          " << (rep.phi_kills_qdet ? "yes" : "NO") << "\n"
                  << "  quasiminors homogeneous: " << (rep.quasiminors_homogeneous ? "yes" : "NO") << "\n"
                  << "  S is a Groebner basis:   " << (rep.basis_is_groebner ? "yes" : "NO") << " ("
                  << rep.spairs_checked << " S-pairs)\n"
                  << "  eliminate(u) = QDet:     " << (rep.elimination_recovers_qdet ? "yes" : "NO")
                  << "\n";
        if (rep.oracle_matches)
            std::cout << "  toric oracle agrees:     " << (*rep.oracle_matches ? "yes" : "NO") << "\n";
        for (const auto& w : rep.witnesses) std::cout << "  witness: " << w << "\n";
        std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass() ? 0 : 1;
}

LambdaSpec lambda_spec_from(const Options& o, const std::string& lambda_json, bool symbolic) {
    if (symbolic) return SymbolicDelta{};
    if (lambda_json.empty()) return zero_lambda(group_of(o));
    return lambda_from_json(Json::parse(lambda_json), group_of(o));
}

int cmd_deform(const Options& o, const std::string& lambda_json, bool symbolic) {
    GeneratorSet s(group_of(o));
    DeformedRelations rels = deformed_relations(s, lambda_spec_from(o, lambda_json, symbolic));
    if (json_mode(o)) {
        Json j = json_doc("deform");
        j["r"] = o.r;
        j["a"] = o.a;
        j["symbolic"] = symbolic;
        Json steps = Json::array();
        for (const auto& st : rels.steps) {
            Json e;
            e["step"] = st.i;
            e["d"] = st.d;
            Json rs = Json::array();
            for (const auto& rel : st.relations) rs.push_back(to_string(rel, *rels.table));
            e["relations"] = rs;
            steps.push_back(e);
        }
        j["steps"] = steps;
        emit(j);
    } else {
        for (const auto& st : rels.steps) {
            std::cout << "step " << st.i << " (d = " << st.d << "):\n";
            for (const auto& rel : st.relations) std::cout << "  " << to_string(rel, *rels.table)
                                                           << " = 0\n";
        }
    }
    return 0;
}

int cmd_charts(const Options& o, const std::string& lambda_json, bool symbolic, int chart_index) {
    GeneratorSet s(group_of(o));
    LambdaSpec spec = lambda_spec_from(o, lambda_json, symbolic);
    std::vector<int> indices;
    if (chart_index >= 0) {
        indices = {chart_index};
    } else if (o.a == 1) {
        indices = {1, 2};
    } else {
        for (int t = 0; t <= s.quiver().n; ++t) indices.push_back(t);
    }
    bool all_certified = true;
    Json arr = Json::array();
    for (int t : indices) {
        Chart c = chart_eliminate(s, t, spec);
        all_certified = all_certified && c.certified_affine_plane();
        if (json_mode(o)) {
            arr.push_back(to_json(c));
        } else {
            std::cout << c.name << ": coords (";
            for (std::size_t i = 0; i < c.coordinates.size(); ++i)
                std::cout << (i ? ", " : "") << c.coordinates[i];
            std::cout << ")  residual " << c.residual.size() << "  "
                      << (c.certified_affine_plane() ? "affine plane" : "NOT CERTIFIED") << "\n";
        }
    }
    if (json_mode(o)) {
        Json j = json_doc("charts");
        j["r"] = o.r;
        j["a"] = o.a;
        j["charts"] = arr;
        j["all_certified"] = all_certified;
        emit(j);
    }
    return all_certified ? 0 : 1;
}

int cmd_fiber(const Options& o, const std::string& lambda_json) {
    GeneratorSet s(group_of(o));
    DeformationParams lam = lambda_json.empty()
                                ? zero_lambda(group_of(o))
                                : lambda_from_json(Json::parse(lambda_json), group_of(o));
    IdealBasis fib = pi_fiber_ideal(s, lam);
    std::size_t dim = fiber_dimension(s, lam);
    if (json_mode(o)) {
        Json j = json_doc("fiber");
        j["r"] = o.r;
        j["a"] = o.a;
        j["lambda"] = to_json(lam);
        j["ideal"] = to_json(fib);
        j["dimension"] = dim;
        emit(j);
    } else {
        for (const auto& f : fib.gens) std::cout << to_string(f, *s.z_table()) << "\n";
        std::cout << "dimension " << dim << "\n";
    }
    return 0;
}

int cmd_pi(const Options& o, const std::string& point_json) {
    GeneratorSet s(group_of(o));
    Json pj = Json::parse(point_json);
    if (!pj.is_array() || pj.size() != s.z_table()->size())
        throw std::invalid_argument("point must list one rational per generator (" +
                                    std::to_string(s.z_table()->size()) + " entries)");
    std::vector<Rat> point;
    for (const auto& e : pj) point.push_back(parse_rational(e.get<std::string>()));
    DeformationParams lam = pi_map_eval(s, point);
    if (json_mode(o)) {
        Json j = json_doc("pi");
        j["r"] = o.r;
        j["a"] = o.a;
        j["lambda"] = to_json(lam);
        j["in_delta"] = lam.in_delta();
        emit(j);
    } else {
        std::cout << to_json(lam).dump() << "\n";
    }
    return 0;
}

int cmd_fixtures(const Options& o) {
    auto results = fixtures::run_all();
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (json_mode(o)) {
        Json j = json_doc("fixtures");
        j["results"] = to_json(results);
        j["pass"] = all;
        emit(j);
    } else {
        for (const auto& r : results) {
            std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name;
            if (!r.pass && !r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
        }
        std::cout << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? 0 : 1;
}

int cmd_sweep(const Options& o, long max_r, const std::string& mode) {
    VerifyMode m = mode == "full_oracle" ? VerifyMode::FullOracle : VerifyMode::BuchbergerOnly;
    Json rows = Json::array();
    bool all = true;
    for (long r = 2; r <= max_r; ++r) {
        for (long a = 1; a < r; ++a) {
            if (std::gcd(r, a) != 1) continue;
            GroupParams g(r, a);
            Json row;
            row["r"] = r;
            row["a"] = a;
            bool pass = true;
            try {
                GeneratorSet s(g);
                TheoremReport rep = verify_theorem(g, m);
                row["theorem"] = rep.pass();
                pass = pass && rep.pass();
                bool span = verify_kernel_spanning(g);
                row["kernel_span"] = span;
                pass = pass && span;
                SplitMix64 rng(o.seed + static_cast<std::uint64_t>(1000 * r + a));
                std::vector<LambdaSpec> lams{LambdaSpec(zero_lambda(g)),
                                             LambdaSpec(random_lambda_in_delta(g, rng))};
                bool charts_ok = true;
                std::vector<int> charts;
                if (a == 1) charts = {1, 2};
                else
                    for (int t = 0; t <= s.quiver().n; ++t) charts.push_back(t);
                for (const auto& lam : lams)
                    for (int t : charts) charts_ok = charts_ok && chart_eliminate(s, t, lam).certified_affine_plane();
                row["charts"] = charts_ok;
                pass = pass && charts_ok;
            } catch (const std::exception& e) {
                row["error"] = e.what();
                pass = false;
            }
            row["pass"] = pass;
            all = all && pass;
            rows.push_back(row);
            if (!json_mode(o))
                std::cout << (pass ? "pass" : "FAIL") << "  1/" << r << "(1," << a << ")\n";
        }
    }
    if (json_mode(o)) {
        Json j = json_doc("sweep");
        j["max_r"] = max_r;
        j["mode"] = m == VerifyMode::FullOracle ? "full_oracle" : "buchberger_only";
        j["seed"] = o.seed;
        j["groups"] = rows;
        j["pass"] = all;
        emit(j);
    } else {
        std::cout << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reconstruction-algebra workbench"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opt.seed, "seed for sampled deformation parameters");
    std::size_t max_pairs = 0;
    app.add_option("--max-pairs", max_pairs, "S-pair cap for Groebner completions");

    auto add_group_opts = [&](CLI::App* sub) {
        sub->add_option("--r", opt.r, "order r of the cyclic group")->required();
        sub->add_option("--a", opt.a, "weight a of the action")->required();
    };

    auto* hj = app.add_subcommand("hj", "continued fraction expansions");
    add_group_opts(hj);
    auto* quiver = app.add_subcommand("quiver", "quiver of the reconstruction algebra");
    add_group_opts(quiver);
    auto* generators = app.add_subcommand("generators", "generating cycles and their images");
    add_group_opts(generators);
    auto* qdet = app.add_subcommand("qdet", "quasideterminantal ideal");
    add_group_opts(qdet);
    auto* matrix_m = app.add_subcommand("matrix-m", "exponent matrix M");
    add_group_opts(matrix_m);
    auto* matrix_k = app.add_subcommand("matrix-k", "kernel matrix K");
    add_group_opts(matrix_k);

    std::string mode = "buchberger_only";
    auto* verify = app.add_subcommand("verify", "verify the kernel theorem");
    add_group_opts(verify);
    verify->add_option("--mode", mode, "buchberger_only or full_oracle")
        ->check(CLI::IsMember({"buchberger_only", "full_oracle"}));

    std::string lambda_json;
    bool symbolic = false;
    auto* deform = app.add_subcommand("deform", "deformed relations");
    add_group_opts(deform);
    deform->add_option("--lambda", lambda_json, "lambda as JSON array of rational-string tuples");
    deform->add_flag("--symbolic", symbolic, "symbolic lambda constrained to Delta");

    int chart_index = -1;
    auto* charts = app.add_subcommand("charts", "affine chart certificates");
    add_group_opts(charts);
    charts->add_option("--lambda", lambda_json, "lambda as JSON (default zero)");
    charts->add_flag("--symbolic", symbolic, "symbolic lambda constrained to Delta");
    charts->add_option("--chart", chart_index, "single chart index");

    auto* fiber = app.add_subcommand("fiber", "fibre ideal and its dimension");
    add_group_opts(fiber);
    fiber->add_option("--lambda", lambda_json, "lambda as JSON (default zero)");

    std::string point_json;
    auto* pi = app.add_subcommand("pi", "evaluate the base map at a point");
    add_group_opts(pi);
    pi->add_option("--point", point_json, "point as JSON array of rational strings")->required();

    long max_r = 10;
    std::string sweep_mode = "buchberger_only";
    auto* sweep = app.add_subcommand("sweep", "batch verification over all coprime (r,a)");
    sweep->add_option("--max-r", max_r, "largest r")->required();
    sweep->add_option("--mode", sweep_mode, "buchberger_only or full_oracle")
        ->check(CLI::IsMember({"buchberger_only", "full_oracle"}));

    auto* fixtures_cmd = app.add_subcommand("fixtures", "replay the printed paper objects");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    if (const char* env = std::getenv("RECON_MAX_PAIRS"))
        recon::groebner_config().max_pairs = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    if (max_pairs > 0) recon::groebner_config().max_pairs = max_pairs;

    try {
        if (hj->parsed()) return cmd_hj(opt);
        if (quiver->parsed()) return cmd_quiver(opt);
        if (generators->parsed()) return cmd_generators(opt);
        if (qdet->parsed()) return cmd_qdet(opt);
        if (matrix_m->parsed()) return cmd_matrix(opt, false);
        if (matrix_k->parsed()) return cmd_matrix(opt, true);
        if (verify->parsed()) return cmd_verify(opt, mode);
        if (deform->parsed()) return cmd_deform(opt, lambda_json, symbolic);
        if (charts->parsed()) return cmd_charts(opt, lambda_json, symbolic, chart_index);
        if (fiber->parsed()) return cmd_fiber(opt, lambda_json);
        if (pi->parsed()) return cmd_pi(opt, point_json);
        if (sweep->parsed()) return cmd_sweep(opt, max_r, sweep_mode);
        if (fixtures_cmd->parsed()) return cmd_fixtures(opt);
    } catch (const std::invalid_argument& e) {
        Json j = json_doc("error");
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j = json_doc("error");
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
    return 2;
}
