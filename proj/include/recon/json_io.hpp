#pragma once

#include "recon/artin.hpp"
#include "recon/combinatorics.hpp"
#include "recon/deform.hpp"
#include "recon/fixtures.hpp"
#include "recon/lattice.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace recon {

// Insertion-ordered documents keep output byte-stable across runs.
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

inline Json json_doc(const std::string& kind) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

inline const char* to_string(ArrowKind k) {
    switch (k) {
        case ArrowKind::Clockwise: return "clockwise";
        case ArrowKind::Anticlockwise: return "anticlockwise";
        case ArrowKind::Extra: return "extra";
    }
    return "?";
}

inline Json to_json(const Quiver& q) {
    Json j;
    j["vertices"] = q.vertex_count();
    j["degenerate"] = q.degenerate;
    Json arrows = Json::array();
    for (const auto& a : q.arrows) {
        Json e;
        e["label"] = a.label;
        e["kind"] = to_string(a.kind);
        e["tail"] = a.tail;
        e["head"] = a.head;
        arrows.push_back(e);
    }
    j["arrows"] = arrows;
    j["tail_table"] = q.tail_table;
    return j;
}

/// Matrices serialise entries as exact integer strings.
inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        rows.push_back(row);
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = rows;
    return j;
}

inline Json to_json(const ExponentMatrixBundle& b, bool include_q) {
    Json j;
    j["row_labels"] = b.row_labels;
    j["col_labels"] = b.col_labels;
    j["m"] = to_json(b.m);
    j["k"] = to_json(b.k);
    if (include_q) j["q"] = to_json(b.q);
    return j;
}

inline Json to_json(const IdealBasis& basis) {
    Json j;
    j["variables"] = basis.order.table->names();
    j["weights"] = basis.order.table->weights();
    Json gens = Json::array();
    for (const auto& f : basis.gens) gens.push_back(to_string(f, *basis.order.table));
    j["generators"] = gens;
    return j;
}

inline Json to_json(const DeformationParams& lam) {
    Json rows = Json::array();
    for (const auto& row : lam.tuples) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const Chart& chart) {
    Json j;
    j["name"] = chart.name;
    j["units"] = chart.units;
    j["coordinates"] = chart.coordinates;
    Json solved;
    for (const auto& [label, value] : chart.solved) solved[label] = to_string(value, *chart.table);
    j["solved"] = solved;
    Json residual = Json::array();
    for (const auto& f : chart.residual) residual.push_back(to_string(f, *chart.table));
    j["residual"] = residual;
    j["certified_affine_plane"] = chart.certified_affine_plane();
    return j;
}

inline Json to_json(const TheoremReport& rep) {
    Json j;
    j["r"] = rep.group.r;
    j["a"] = rep.group.a;
    j["mode"] = rep.mode == VerifyMode::FullOracle ? "full_oracle" : "buchberger_only";
    j["phi_kills_qdet"] = rep.phi_kills_qdet;
    j["quasiminors_homogeneous"] = rep.quasiminors_homogeneous;
    j["basis_is_groebner"] = rep.basis_is_groebner;
    j["spairs_checked"] = rep.spairs_checked;
    j["elimination_recovers_qdet"] = rep.elimination_recovers_qdet;
    if (rep.oracle_matches) j["oracle_matches"] = *rep.oracle_matches;
    j["matrix_provenance"] = rep.matrix_provenance;
    j["witnesses"] = rep.witnesses;
    j["pass"] = rep.pass();
    return j;
}

inline Json to_json(const std::vector<fixtures::FixtureResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results) {
        Json e;
        e["name"] = r.name;
        e["pass"] = r.pass;
        if (!r.detail.empty()) e["detail"] = r.detail;
        arr.push_back(e);
    }
    return arr;
}

/// Parse lambda from a JSON array of arrays of rational strings, in the
/// display order (lambda_{i,beta_i-1}, ..., lambda_{i,0}).
inline DeformationParams lambda_from_json(const Json& j, const GroupParams& g) {
    auto beta = lambda_shape(g);
    if (!j.is_array() || j.size() != beta.size())
        throw std::invalid_argument("lambda must be an array with one tuple per step");
    DeformationParams lam;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != static_cast<std::size_t>(beta[i]))
            throw std::invalid_argument("lambda tuple " + std::to_string(i + 1) + " must have " +
                                        std::to_string(beta[i]) + " entries");
        std::vector<Rat> row;
        for (const auto& entry : j[i]) row.push_back(parse_rational(entry.get<std::string>()));
        lam.tuples.push_back(std::move(row));
    }
    return lam;
}

} // namespace recon
