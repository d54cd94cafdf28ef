#ifndef ALTRANK_FAMILIES_HPP
#define ALTRANK_FAMILIES_HPP

// Explicit matrix families: strictly upper-triangular spaces, nonsingular
// alternating families, the constant-rank block families and their
// rank-at-least variants, the block operator family paired with the standard
// symplectic form, and the 4x4 plane whose Pfaffian is x^2 + y^2 + z^2.
//
// Basis order inside block constructions: A-entries, then B, then C/D, each
// row-major.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altrank/analyze.hpp"
#include "altrank/matrix.hpp"
#include "altrank/space.hpp"
#include "altrank/symplectic.hpp"

namespace altrank {

/// How hard constructors look at the contracts of caller-supplied inner
/// families. Exhaustive up to `budget` members, otherwise `samples` draws.
struct ContractCheck {
    std::uint64_t budget = 1u << 18;
    std::uint64_t samples = 2000;
    std::uint64_t seed = 0x1a2b;
};

namespace detail {

template <Field F>
void require_dimension(const AffineMatrixSpace<F>& sp, std::size_t rows, std::size_t cols, std::size_t dim,
                       const std::string& what)
{
    if (sp.rows() != rows || sp.cols() != cols)
        throw precondition_error(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                                 " matrices");
    if (sp.dimension() != dim)
        throw precondition_error(what + ": expected dimension " + std::to_string(dim) + ", got " +
                                 std::to_string(sp.dimension()));
}

template <Field F>
void require_all_invertible(const AffineMatrixSpace<F>& sp, const ContractCheck& check, const std::string& what)
{
    const auto prof = rank_profile(sp, check.budget, check.seed, check.samples);
    if (prof.min_rank != sp.rows())
        throw precondition_error(what + ": inner family has a member of rank " + std::to_string(prof.min_rank));
}

/// [u 0; 0 0] style placement of a block at (r0, c0) inside an n x m zero matrix.
template <Field F>
Matrix<F> placed(const Matrix<F>& block, std::size_t n, std::size_t m, std::size_t r0, std::size_t c0)
{
    Matrix<F> out(block.field(), n, m);
    out.set_block(r0, c0, block);
    return out;
}

/// [0 X; -X^T 0]-style alternating embedding of an arbitrary block X at
/// rows r0.., columns c0.. (requires the two index ranges to be disjoint).
template <Field F>
Matrix<F> skew_placed(const Matrix<F>& x, std::size_t n, std::size_t r0, std::size_t c0)
{
    const F& f = x.field();
    Matrix<F> out(f, n, n);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            out(r0 + i, c0 + j) = x(i, j);
            out(c0 + j, r0 + i) = f.neg(x(i, j));
        }
    return out;
}

} // namespace detail

/// NT_n: strictly upper-triangular n x n matrices (linear space).
template <Field F>
AffineMatrixSpace<F> build_nt(std::size_t n, const F& f)
{
    if (n == 0) throw precondition_error("build_nt: n must be at least 1");
    std::vector<Matrix<F>> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) basis.push_back(unit_matrix(f, n, n, i, j));
    return AffineMatrixSpace<F>(Matrix<F>(f, n, n), std::move(basis), false);
}

/// I_s + NT_s, the default inner family of invertible s x s matrices.
template <Field F>
AffineMatrixSpace<F> build_identity_plus_nt(std::size_t s, const F& f)
{
    auto nt = build_nt(s, f);
    return AffineMatrixSpace<F>(Matrix<F>::identity(f, s), nt.basis(), false);
}

/// {[0 I+A; -(I+A)^T B] : A in NT_s, B in A_s} in A_{2s}.
template <Field F>
AffineMatrixSpace<F> build_nonsingular_alt(std::size_t s, const F& f)
{
    if (s == 0) throw precondition_error("build_nonsingular_alt: s must be at least 1");
    const std::size_t n = 2 * s;
    std::vector<Matrix<F>> basis;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) basis.push_back(alternating_unit(f, n, i, s + j));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) basis.push_back(alternating_unit(f, n, s + i, s + j));
    return AffineMatrixSpace<F>(AlternatingMatrix<F>::standard_symplectic(f, s).matrix(), std::move(basis), true);
}

/// {[A B C; -B^T 0 0; -C^T 0 0] : A in A_s, B in inner, C in M_{s,n-2s}}.
/// `inner` must be an affine space of invertible s x s matrices of dimension
/// s(s-1)/2.
template <Field F>
AffineMatrixSpace<F> build_m_tilde_alt(std::size_t n, std::size_t s, const AffineMatrixSpace<F>& inner,
                                       const ContractCheck& check = {})
{
    if (s == 0 || n < 2 * s) throw precondition_error("build_m_tilde_alt: need s >= 1 and n >= 2s");
    detail::require_dimension(inner, s, s, s * (s - 1) / 2, "build_m_tilde_alt");
    detail::require_all_invertible(inner, check, "build_m_tilde_alt");
    const F& f = inner.field();
    std::vector<Matrix<F>> basis;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) basis.push_back(alternating_unit(f, n, i, j));
    for (const auto& b : inner.basis()) basis.push_back(detail::skew_placed(b, n, 0, s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 2 * s; j < n; ++j) basis.push_back(alternating_unit(f, n, i, j));
    return AffineMatrixSpace<F>(detail::skew_placed(inner.base(), n, 0, s), std::move(basis), true);
}

template <Field F>
AffineMatrixSpace<F> build_m_tilde_alt(std::size_t n, std::size_t s, const F& f)
{
    return build_m_tilde_alt(n, s, build_identity_plus_nt(s, f));
}

/// {[B C] : B in inner, C in M_{s,p-s}} of s x p matrices.
template <Field F>
AffineMatrixSpace<F> build_m_tilde_rect(std::size_t p, const AffineMatrixSpace<F>& inner, const ContractCheck& check = {})
{
    const std::size_t s = inner.rows();
    if (s == 0 || p < s) throw precondition_error("build_m_tilde_rect: need 1 <= s <= p");
    detail::require_dimension(inner, s, s, s * (s - 1) / 2, "build_m_tilde_rect");
    detail::require_all_invertible(inner, check, "build_m_tilde_rect");
    const F& f = inner.field();
    std::vector<Matrix<F>> basis;
    for (const auto& b : inner.basis()) basis.push_back(detail::placed(b, s, p, 0, 0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = s; j < p; ++j) basis.push_back(unit_matrix(f, s, p, i, j));
    return AffineMatrixSpace<F>(detail::placed(inner.base(), s, p, 0, 0), std::move(basis), false);
}

namespace detail {

template <Field F>
void require_nonsingular_alt_inner(std::size_t r, const AffineMatrixSpace<F>& inner, const ContractCheck& check,
                                   const std::string& what)
{
    if (r == 0 || r % 2 != 0) throw precondition_error(what + ": r must be positive and even");
    const std::size_t s = r / 2;
    require_dimension(inner, r, r, s * (s - 1), what);
    if (!inner.alternating()) throw precondition_error(what + ": inner family is not alternating");
    require_all_invertible(inner, check, what);
}

} // namespace detail

/// {[H C; -C^T 0] : H in inner, C in F^r} in A_{r+1}.
template <Field F>
AffineMatrixSpace<F> build_h_plus(std::size_t r, const AffineMatrixSpace<F>& inner, const ContractCheck& check = {})
{
    detail::require_nonsingular_alt_inner(r, inner, check, "build_h_plus");
    const F& f = inner.field();
    const std::size_t n = r + 1;
    std::vector<Matrix<F>> basis;
    for (const auto& h : inner.basis()) basis.push_back(detail::placed(h, n, n, 0, 0));
    for (std::size_t i = 0; i < r; ++i) basis.push_back(alternating_unit(f, n, i, r));
    return AffineMatrixSpace<F>(detail::placed(inner.base(), n, n, 0, 0), std::move(basis), true);
}

template <Field F>
AffineMatrixSpace<F> build_h_plus(std::size_t r, const F& f)
{
    return build_h_plus(r, build_nonsingular_alt(r / 2, f));
}

/// {[H C; -C^T D] : H in inner, C in M_{r,n-r}, D in A_{n-r}} in A_n.
template <Field F>
AffineMatrixSpace<F> build_h_bar(std::size_t n, std::size_t r, const AffineMatrixSpace<F>& inner,
                                 const ContractCheck& check = {})
{
    detail::require_nonsingular_alt_inner(r, inner, check, "build_h_bar");
    if (n < r) throw precondition_error("build_h_bar: n must be at least r");
    const F& f = inner.field();
    std::vector<Matrix<F>> basis;
    for (const auto& h : inner.basis()) basis.push_back(detail::placed(h, n, n, 0, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = r; j < n; ++j) basis.push_back(alternating_unit(f, n, i, j));
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) basis.push_back(alternating_unit(f, n, i, j));
    return AffineMatrixSpace<F>(detail::placed(inner.base(), n, n, 0, 0), std::move(basis), true);
}

template <Field F>
AffineMatrixSpace<F> build_h_bar(std::size_t n, std::size_t r, const F& f)
{
    if (r == 0 || r % 2 != 0) throw precondition_error("build_h_bar: r must be positive and even");
    return build_h_bar(n, r, build_nonsingular_alt(r / 2, f));
}

/// {[A B; 0 A^T] : A in W, B in A_n} with K the standard symplectic matrix.
/// W must be a linear space with trivial spectrum; over F_p this is checked
/// exhaustively (up to `spectrum_budget` members).
template <Field F>
FormSpacePair<F> build_operator_block(std::size_t n, const AffineMatrixSpace<F>& w,
                                      std::uint64_t spectrum_budget = default_enumeration_budget)
{
    if (n == 0) throw precondition_error("build_operator_block: n must be at least 1");
    if (w.rows() != n || w.cols() != n) throw precondition_error("build_operator_block: W must consist of n x n matrices");
    if (!w.base().is_zero()) throw precondition_error("build_operator_block: W must be a linear space");
    if constexpr (std::is_same_v<F, PrimeField>) {
        const auto spec = trivial_spectrum_check(w, spectrum_budget);
        if (!spec.trivial) throw precondition_error("build_operator_block: W does not have trivial spectrum");
    } else {
        // only rational eigenvalues matter; spot-check seeded members
        const auto members = sample(w, 200, 0x5eed);
        for (const auto& m : members)
            for (const auto& ev : eigenvalues_in_field(m))
                if (ev != 0) throw precondition_error("build_operator_block: W has a member with a nonzero rational eigenvalue");
    }
    const F& f = w.field();
    const std::size_t m = 2 * n;
    std::vector<Matrix<F>> ops;
    for (const auto& a : w.basis()) {
        Matrix<F> op(f, m, m);
        op.set_block(0, 0, a);
        op.set_block(n, n, a.transpose());
        ops.push_back(std::move(op));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ops.push_back(detail::placed(alternating_unit(f, n, i, j), m, m, 0, n));
    return FormSpacePair<F>(AlternatingMatrix<F>::standard_symplectic(f, n), std::move(ops));
}

/// A(x, y, z) = [0 x y z; -x 0 z -y; -y -z 0 x; -z y -x 0]; Pf = x^2 + y^2 + z^2.
template <Field F>
Matrix<F> counterexample_matrix(const F& f, const typename F::value_type& x, const typename F::value_type& y,
                                const typename F::value_type& z)
{
    Matrix<F> a(f, 4, 4);
    auto put = [&](std::size_t i, std::size_t j, const typename F::value_type& v) {
        a(i, j) = v;
        a(j, i) = f.neg(v);
    };
    put(0, 1, x);
    put(0, 2, y);
    put(0, 3, z);
    put(1, 2, z);
    put(1, 3, f.neg(y));
    put(2, 3, x);
    return a;
}

/// The plane {A(x, y, 1)}: base A(0,0,1), translation basis A(1,0,0), A(0,1,0).
template <Field F>
AffineMatrixSpace<F> build_counterexample_plane(const F& f)
{
    const auto o = f.zero(), l = f.one();
    return AffineMatrixSpace<F>(counterexample_matrix(f, o, o, l),
                                {counterexample_matrix(f, l, o, o), counterexample_matrix(f, o, l, o)}, true);
}

enum class DimensionProblem { symplectic, rank_at_least, constant_rank };

inline DimensionProblem parse_dimension_problem(const std::string& s)
{
    if (s == "symplectic") return DimensionProblem::symplectic;
    if (s == "rank-at-least") return DimensionProblem::rank_at_least;
    if (s == "constant-rank") return DimensionProblem::constant_rank;
    throw precondition_error("unknown problem '" + s + "' (expected symplectic, rank-at-least or constant-rank)");
}

inline const char* to_string(DimensionProblem k)
{
    switch (k) {
    case DimensionProblem::symplectic: return "symplectic";
    case DimensionProblem::rank_at_least: return "rank-at-least";
    default: return "constant-rank";
    }
}

/// Closed-form maximal dimensions of affine subspaces of A_n. symplectic
/// (n = r): s(s-1). rank_at_least: C(n,2) - s^2. constant_rank: s(n-s-1),
/// or s(s+1) when n = r+1.
inline std::uint64_t maximal_dimension(std::size_t n, std::size_t r, DimensionProblem which)
{
    if (r % 2 != 0 || r > n) throw precondition_error("maximal_dimension: need r even and 0 <= r <= n");
    const std::uint64_t s = r / 2;
    switch (which) {
    case DimensionProblem::symplectic:
        if (n != r) throw precondition_error("maximal_dimension: the symplectic case requires n = r");
        return s * (s > 0 ? s - 1 : 0);
    case DimensionProblem::rank_at_least: return static_cast<std::uint64_t>(n) * (n - 1) / 2 - s * s;
    default:
        if (n == r + 1) return s * (s + 1);
        return s == 0 ? 0 : s * (n - s - 1);
    }
}

/// Smallest field size under which the formula is known to hold.
inline std::uint64_t min_field_size(std::size_t n, std::size_t r, DimensionProblem which)
{
    switch (which) {
    case DimensionProblem::symplectic: return r >= 2 ? r - 1 : 0;
    case DimensionProblem::rank_at_least: return n % 2 == 0 ? (n >= 1 ? n - 1 : 0) : (n >= 2 ? n - 2 : 0);
    default: return std::max<std::uint64_t>(r >= 1 ? r - 1 : 0, 2 + r / 2);
    }
}

/// The family attaining maximal_dimension(n, r, which): the nonsingular
/// family in A_r, the rank-at-least family, or the constant-rank one (H^+ at
/// n = r+1).
template <Field F>
AffineMatrixSpace<F> build_extremal_family(std::size_t n, std::size_t r, DimensionProblem which, const F& f)
{
    if (r == 0 || r % 2 != 0 || r > n) throw precondition_error("build_extremal_family: need r even, 2 <= r <= n");
    switch (which) {
    case DimensionProblem::symplectic:
        if (n != r) throw precondition_error("build_extremal_family: the symplectic case requires n = r");
        return build_nonsingular_alt(r / 2, f);
    case DimensionProblem::rank_at_least: return build_h_bar(n, r, f);
    default:
        if (n == r + 1) return build_h_plus(r, f);
        return build_m_tilde_alt(n, r / 2, f);
    }
}

/// Coefficients c with Pf(sum x_i M_i) = sum_{i<=j} c_ij x_i x_j, for 4x4
/// alternating M_i (the Pfaffian is then a quadratic form). Returned as an
/// upper-triangular array, row-major: c_00, c_01, ..., c_11, ...
template <Field F>
std::vector<typename F::value_type> pfaffian_quadratic_form(const std::vector<Matrix<F>>& mats)
{
    if (mats.empty()) throw precondition_error("pfaffian_quadratic_form: no matrices");
    const F& f = mats.front().field();
    for (const auto& m : mats)
        if (m.rows() != 4 || !is_alternating(m)) throw precondition_error("pfaffian_quadratic_form: expects 4x4 alternating");
    auto pf = [&](const Matrix<F>& m) { return pfaffian(AlternatingMatrix<F>(m)); };
    std::vector<typename F::value_type> diag;
    for (const auto& m : mats) diag.push_back(pf(m));
    std::vector<typename F::value_type> out;
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i; j < mats.size(); ++j) {
            if (i == j) {
                out.push_back(diag[i]);
            } else {
                out.push_back(f.sub(f.sub(pf(mats[i] + mats[j]), diag[i]), diag[j]));
            }
        }
    return out;
}

template <Field F>
struct PlaneCertificate {
    std::vector<typename F::value_type> translation_form; // (x^2, xy, y^2)
    std::vector<typename F::value_type> full_form;        // (x^2, xy, xz, y^2, yz, z^2)
    bool translation_form_is_sum_of_squares = false;
    bool full_form_is_sum_of_squares = false;
    bool positive_diagonal = false;
    /// No nonzero (x, y) with Pf(A(x, y, 0)) = 0, i.e. no rank-2 matrix in
    /// the translation plane, and therefore none of rank < 4 in the plane.
    bool anisotropic = false;
};

/// Over Q a diagonal form with positive coefficients is anisotropic. Over
/// F_p the form is scanned exhaustively.
template <Field F>
PlaneCertificate<F> certify_plane_anisotropy(const F& f)
{
    const auto o = f.zero(), l = f.one();
    const auto ax = counterexample_matrix(f, l, o, o);
    const auto ay = counterexample_matrix(f, o, l, o);
    const auto az = counterexample_matrix(f, o, o, l);
    PlaneCertificate<F> cert;
    cert.translation_form = pfaffian_quadratic_form<F>({ax, ay});
    cert.full_form = pfaffian_quadratic_form<F>({ax, ay, az});
    cert.translation_form_is_sum_of_squares = cert.translation_form == std::vector<typename F::value_type>{l, o, l};
    cert.full_form_is_sum_of_squares = cert.full_form == std::vector<typename F::value_type>{l, o, o, l, o, l};
    const auto& q = cert.translation_form;
    if constexpr (std::is_same_v<F, RationalField>) {
        cert.positive_diagonal = f.is_zero(q[1]) && q[0] > 0 && q[2] > 0;
        cert.anisotropic = cert.positive_diagonal;
    } else {
        cert.positive_diagonal = false; // no ordering on F_p
        cert.anisotropic = true;
        const std::uint64_t p = f.characteristic();
        for (std::uint64_t x = 0; x < p && cert.anisotropic; ++x)
            for (std::uint64_t y = 0; y < p; ++y) {
                if (x == 0 && y == 0) continue;
                const auto fx = f.element(x), fy = f.element(y);
                const auto v = f.add(f.add(f.mul(q[0], f.mul(fx, fx)), f.mul(q[1], f.mul(fx, fy))), f.mul(q[2], f.mul(fy, fy)));
                if (f.is_zero(v)) {
                    cert.anisotropic = false;
                    break;
                }
            }
    }
    return cert;
}

/// First (x, y, z) in lexicographic order with (x, y, z) != 0, z in `zs`,
/// and Pf(A(x, y, z)) = 0 over F_p.
inline std::optional<std::array<std::uint32_t, 3>> find_singular_plane_point(const PrimeField& f,
                                                                               std::vector<std::uint32_t> zs)
{
    const std::uint32_t p = f.characteristic();
    for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t y = 0; y < p; ++y)
            for (auto z : zs) {
                if (x == 0 && y == 0 && z == 0) continue;
                const auto a = counterexample_matrix(f, f.element(x), f.element(y), f.element(z));
                if (f.is_zero(pfaffian(AlternatingMatrix<PrimeField>(a)))) return std::array<std::uint32_t, 3>{x, y, z};
            }
    return std::nullopt;
}

} // namespace altrank

#endif // ALTRANK_FAMILIES_HPP
