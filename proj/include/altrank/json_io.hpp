#ifndef ALTRANK_JSON_IO_HPP
#define ALTRANK_JSON_IO_HPP

// JSON forms of matrices, spaces, operator pairs and reduction certificates.
//
//   Matrix:      {"field": "Fp:5", "rows": 2, "cols": 2, "data": [[0, 1], [4, 0]]}
//   Space:       {"field", "shape": [rows, cols], "alternating", "base": data, "basis": [data, ...]}
//   Certificate: {"verdicts", "P", "lagrangian", "recovered_M", "witnesses"}
//
// Entries are integers over F_p and strings ("-3/4") over Q; the parser
// accepts either spelling for both fields.

#include <string>
#include <vector>

#include "json.hpp"

#include "altrank/families.hpp"
#include "altrank/matrix.hpp"
#include "altrank/reduce.hpp"
#include "altrank/space.hpp"
#include "altrank/symplectic.hpp"

namespace altrank {

using Json = nlohmann::ordered_json;

inline Json scalar_to_json(const PrimeField&, PrimeField::value_type v) { return v; }
inline Json scalar_to_json(const RationalField& f, const RationalField::value_type& v) { return f.to_string(v); }

template <Field F>
typename F::value_type scalar_from_json(const F& f, const Json& j)
{
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    throw precondition_error("matrix entry must be an integer or a string, got " + j.dump());
}

template <Field F>
Json vector_to_json(const F& f, const Vector<F>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(f, x));
    return out;
}

template <Field F>
Json matrix_data(const Matrix<F>& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.field(), m.row_vector(i)));
    return rows;
}

template <Field F>
Json matrix_to_json(const Matrix<F>& m)
{
    return Json{{"field", m.field().name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", matrix_data(m)}};
}

template <Field F>
Matrix<F> matrix_from_data(const F& f, const Json& data, std::size_t rows, std::size_t cols)
{
    if (!data.is_array() || data.size() != rows) throw precondition_error("matrix data: expected " + std::to_string(rows) + " rows");
    Matrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw precondition_error("matrix data: row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar_from_json(f, row[j]);
    }
    return m;
}

template <Field F>
Matrix<F> matrix_from_json(const F& f, const Json& j)
{
    return matrix_from_data(f, j.at("data"), j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
}

template <Field F>
Json space_to_json(const AffineMatrixSpace<F>& sp)
{
    Json basis = Json::array();
    for (const auto& b : sp.basis()) basis.push_back(matrix_data(b));
    return Json{{"field", sp.field().name()},
                {"shape", {sp.rows(), sp.cols()}},
                {"alternating", sp.alternating()},
                {"base", matrix_data(sp.base())},
                {"basis", std::move(basis)}};
}

template <Field F>
AffineMatrixSpace<F> space_from_json(const F& f, const Json& j)
{
    const auto& shape = j.at("shape");
    if (!shape.is_array() || shape.size() != 2) throw precondition_error("space: shape must be [rows, cols]");
    const auto rows = shape[0].get<std::size_t>(), cols = shape[1].get<std::size_t>();
    std::vector<Matrix<F>> basis;
    for (const auto& b : j.at("basis")) basis.push_back(matrix_from_data(f, b, rows, cols));
    return AffineMatrixSpace<F>(matrix_from_data(f, j.at("base"), rows, cols), std::move(basis),
                                j.value("alternating", false));
}

/// {"field", "gram": Matrix, "operators": Space (zero base)}
template <Field F>
Json pair_to_json(const FormSpacePair<F>& pair)
{
    return Json{{"field", pair.gram().field().name()},
                {"gram", matrix_to_json(pair.gram().matrix())},
                {"operators", space_to_json(pair.operator_space())}};
}

template <Field F>
FormSpacePair<F> pair_from_json(const F& f, const Json& j)
{
    auto k = AlternatingMatrix<F>(matrix_from_json(f, j.at("gram")));
    auto ops = space_from_json(f, j.at("operators"));
    if (!ops.base().is_zero()) throw precondition_error("operator space must be linear (zero base)");
    return FormSpacePair<F>(std::move(k), ops.basis());
}

template <Field F>
Json profile_to_json(const RankProfile<F>& p, const F& f)
{
    Json j{{"method", to_string(p.method)},
           {"min_rank", p.min_rank},
           {"max_rank", p.max_rank},
           {"constancy", p.constancy()}};
    if (p.method == ProfileMethod::exhaustive) {
        j["enumerated"] = p.members_checked;
    } else {
        j["samples"] = p.members_checked;
        j["seed"] = p.seed;
    }
    j["min_witness_coordinates"] = vector_to_json(f, p.min_witness);
    j["max_witness_coordinates"] = vector_to_json(f, p.max_witness);
    return j;
}

template <Field F>
Json certificate_to_json(const ReductionCertificate<F>& c, const F& f)
{
    Json verdicts = Json::object();
    for (const auto& [k, v] : c.verdicts.named()) verdicts[k] = v;
    Json lag = Json::array();
    for (const auto& v : c.lagrangian) lag.push_back(vector_to_json(f, v));
    Json wit = Json::array();
    for (const auto& [step, what] : c.witnesses) wit.push_back(Json{{"step", step}, {"detail", what}});
    return Json{{"verdicts", std::move(verdicts)},
                {"all_verdicts", c.ok()},
                {"constant_rank_method", c.constant_rank_method},
                {"P", c.p ? matrix_to_json(*c.p) : Json(nullptr)},
                {"lagrangian", std::move(lag)},
                {"recovered_M", c.recovered_m ? space_to_json(*c.recovered_m) : Json(nullptr)},
                {"witnesses", std::move(wit)}};
}

} // namespace altrank

#endif // ALTRANK_JSON_IO_HPP
