#ifndef ALTRANK_SYMPLECTIC_HPP
#define ALTRANK_SYMPLECTIC_HPP

// Alternating-form linear algebra: radicals, symplectic bases adapted to a
// Lagrangian, total singularity, and the correspondence between affine
// spaces of symplectic forms through a Gram matrix K and spaces of
// K-alternating operators (G <-> K^{-1} G).

#include <optional>
#include <utility>
#include <vector>

#include "altrank/matrix.hpp"
#include "altrank/space.hpp"

namespace altrank {

template <Field F>
std::vector<Vector<F>> radical(const AlternatingMatrix<F>& a)
{
    return kernel_basis(a.matrix());
}

/// x^T b y = 0 for every pair of basis vectors.
template <Field F>
bool is_totally_singular(const Matrix<F>& b, const std::vector<Vector<F>>& basis)
{
    const F& f = b.field();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!f.is_zero(bilinear(b, basis[i], basis[j]))) return false;
    // x^T b x vanishes for alternating b; checked anyway for general input
    for (const auto& x : basis)
        if (!f.is_zero(bilinear(b, x, x))) return false;
    return true;
}

template <Field F>
bool is_totally_singular(const AlternatingMatrix<F>& b, const std::vector<Vector<F>>& basis)
{
    return is_totally_singular(b.matrix(), basis);
}

/// A totally K-singular subspace of dimension half the ambient dimension.
template <Field F>
class Lagrangian {
public:
    Lagrangian(const AlternatingMatrix<F>& k, std::vector<Vector<F>> basis) : basis_(std::move(basis))
    {
        const std::size_t n = k.size();
        if (2 * basis_.size() != n) throw precondition_error("Lagrangian: dimension must be half the ambient one");
        if (vectors_rank(k.field(), n, basis_) != basis_.size())
            throw precondition_error("Lagrangian: basis is linearly dependent");
        if (!is_totally_singular(k, basis_)) throw precondition_error("Lagrangian: subspace is not totally singular");
    }
    const std::vector<Vector<F>>& basis() const noexcept { return basis_; }

private:
    std::vector<Vector<F>> basis_;
};

/// Invertible P with P^T K P = [0 I_s; -I_s 0]. When a Lagrangian L is given,
/// the last s columns of P span L, i.e. P^{-1} L = {0} x F^s.
template <Field F>
Matrix<F> symplectic_basis(const AlternatingMatrix<F>& k, const std::optional<Lagrangian<F>>& lagrangian = std::nullopt)
{
    const F& f = k.field();
    const std::size_t n = k.size();
    if (rank(k) != n) throw precondition_error("symplectic_basis: K is singular");
    const std::size_t s = n / 2;
    const Matrix<F>& km = k.matrix();
    std::vector<Vector<F>> es, fs;

    if (lagrangian) {
        fs = lagrangian->basis();
        // dual vectors: e_i^T K f_j = delta_ij
        const Matrix<F> kf = (km * Matrix<F>::from_columns(f, n, fs)).transpose();
        for (std::size_t i = 0; i < s; ++i) {
            auto e = solve(kf, unit_vector(f, s, i));
            if (!e) throw std::logic_error("symplectic_basis: dual system unsolvable");
            es.push_back(std::move(*e));
        }
        // make the e's pairwise orthogonal: e_i += sum_{j>i} K(e_i, e_j) f_j
        std::vector<Vector<F>> adjusted = es;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j) {
                const auto c = bilinear(km, es[i], es[j]);
                if (f.is_zero(c)) continue;
                for (std::size_t t = 0; t < n; ++t) adjusted[i][t] = f.add(adjusted[i][t], f.mul(c, fs[j][t]));
            }
        es = std::move(adjusted);
    } else {
        std::vector<Vector<F>> pool;
        for (std::size_t i = 0; i < n; ++i) pool.push_back(unit_vector(f, n, i));
        while (es.size() < s) {
            std::size_t xi = 0;
            while (xi < pool.size() && is_zero_vector(f, pool[xi])) ++xi;
            if (xi == pool.size()) throw std::logic_error("symplectic_basis: ran out of vectors");
            std::size_t yi = xi + 1;
            for (; yi < pool.size(); ++yi)
                if (!f.is_zero(bilinear(km, pool[xi], pool[yi]))) break;
            if (yi == pool.size()) throw std::logic_error("symplectic_basis: no partner vector");
            Vector<F> x = pool[xi];
            Vector<F> y = pool[yi];
            const auto scale = f.inv(bilinear(km, x, y));
            for (auto& t : y) t = f.mul(t, scale);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(yi));
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(xi));
            // project onto the K-orthogonal of span(x, y): v - K(v,y) x + K(v,x) y
            for (auto& v : pool) {
                const auto vy = bilinear(km, v, y);
                const auto vx = bilinear(km, v, x);
                for (std::size_t t = 0; t < n; ++t)
                    v[t] = f.add(f.sub(v[t], f.mul(vy, x[t])), f.mul(vx, y[t]));
            }
            es.push_back(std::move(x));
            fs.push_back(std::move(y));
        }
    }

    std::vector<Vector<F>> cols = es;
    cols.insert(cols.end(), fs.begin(), fs.end());
    return Matrix<F>::from_columns(f, n, cols);
}

/// No eigenvalue other than (possibly) zero in F_p.
inline bool has_trivial_spectrum(const Matrix<PrimeField>& m)
{
    const PrimeField& f = m.field();
    for (std::uint64_t l = 1; l < f.characteristic(); ++l) {
        Matrix<PrimeField> shifted = m;
        for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) = f.sub(shifted(i, i), f.element(l));
        if (f.is_zero(det(std::move(shifted)))) return false;
    }
    return true;
}

/// The Gram matrix K of a symplectic form s0 together with a linear space of
/// endomorphisms, each of which is s0-alternating (K M alternating).
template <Field F>
class FormSpacePair {
public:
    FormSpacePair(AlternatingMatrix<F> k, std::vector<Matrix<F>> operators) : k_(std::move(k)), ops_(std::move(operators))
    {
        if (rank(k_) != k_.size()) throw precondition_error("FormSpacePair: K is singular");
        const std::size_t n = k_.size();
        for (const auto& m : ops_) {
            if (m.rows() != n || m.cols() != n) throw precondition_error("FormSpacePair: operator shape mismatch");
            if (!is_alternating(k_.matrix() * m))
                throw precondition_error("FormSpacePair: operator is not alternating for the form");
        }
        std::vector<Vector<F>> vs;
        for (const auto& m : ops_) vs.push_back(m.vectorized());
        if (vectors_rank(k_.field(), n * n, vs) != ops_.size())
            throw precondition_error("FormSpacePair: operators are linearly dependent");
    }

    const AlternatingMatrix<F>& gram() const noexcept { return k_; }
    const std::vector<Matrix<F>>& operators() const noexcept { return ops_; }
    std::size_t dimension() const noexcept { return ops_.size(); }
    std::size_t size() const noexcept { return k_.size(); }

    /// The operator space as a linear matrix space (zero base).
    AffineMatrixSpace<F> operator_space() const
    {
        return AffineMatrixSpace<F>(Matrix<F>(k_.field(), size(), size()), ops_, false);
    }

private:
    AlternatingMatrix<F> k_;
    std::vector<Matrix<F>> ops_;
};

/// G -> K^{-1} G on the translation space of an affine space of alternating
/// forms that contains K.
template <Field F>
FormSpacePair<F> phi_forms_to_operators(const AlternatingMatrix<F>& k, const AffineMatrixSpace<F>& space)
{
    if (rank(k) != k.size()) throw precondition_error("phi_forms_to_operators: K is singular");
    if (!space.alternating()) throw precondition_error("phi_forms_to_operators: space is not alternating");
    if (!space.contains(k.matrix())) throw precondition_error("phi_forms_to_operators: K is not a member of the space");
    const auto kinv = inverse(k.matrix());
    std::vector<Matrix<F>> ops;
    for (const auto& g : space.basis()) ops.push_back(kinv * g);
    return FormSpacePair<F>(k, std::move(ops));
}

/// Inverse correspondence: K + { K M : M in operators }.
template <Field F>
AffineMatrixSpace<F> phi_operators_to_forms(const FormSpacePair<F>& pair)
{
    std::vector<Matrix<F>> forms;
    for (const auto& m : pair.operators()) forms.push_back(pair.gram().matrix() * m);
    return AffineMatrixSpace<F>(pair.gram().matrix(), std::move(forms), true);
}

/// (every K + lambda G invertible for lambda in F_p, K^{-1} G has trivial
/// spectrum). The two answers always agree.
inline std::pair<bool, bool> pencil_symplectic_iff_trivial_spectrum(const AlternatingMatrix<PrimeField>& k,
                                                                    const AlternatingMatrix<PrimeField>& g)
{
    const PrimeField& f = k.field();
    if (k.size() != g.size()) throw precondition_error("pencil check: size mismatch");
    if (rank(k) != k.size()) throw precondition_error("pencil check: K is singular");
    bool pencil = true;
    for (std::uint64_t l = 0; l < f.characteristic() && pencil; ++l) {
        Matrix<PrimeField> m = k.matrix();
        m.add_scaled(f.element(l), g.matrix());
        pencil = is_invertible(m);
    }
    const bool trivial = has_trivial_spectrum(inverse(k.matrix()) * g.matrix());
    return {pencil, trivial};
}

} // namespace altrank

#endif // ALTRANK_SYMPLECTIC_HPP
