#ifndef ALTRANK_SPACE_HPP
#define ALTRANK_SPACE_HPP

// Affine subspaces of matrices, stored as a base point plus an independent
// translation basis: membership, enumeration, seeded sampling, congruence and
// equivalence actions, block views and a brute-force equivalence search.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altrank/field.hpp"
#include "altrank/matrix.hpp"
#include "altrank/parallel.hpp"

namespace altrank {

inline constexpr std::uint64_t default_enumeration_budget = 1'000'000;
inline constexpr std::uint64_t default_sample_count = 100'000;
/// Rational sampling draws integer coordinates from [-box, box].
inline constexpr std::int64_t rational_sample_box = 1000;

template <Field F>
class AffineMatrixSpace {
public:
    using matrix_type = Matrix<F>;
    using value_type = typename F::value_type;

    /// Throws precondition_error if shapes/fields differ, the basis is
    /// dependent, or alternating is requested for non-alternating inputs.
    AffineMatrixSpace(Matrix<F> base, std::vector<Matrix<F>> basis, bool alternating)
        : base_(std::move(base)), basis_(std::move(basis)), alternating_(alternating)
    {
        for (const auto& b : basis_) {
            if (b.rows() != base_.rows() || b.cols() != base_.cols())
                throw precondition_error("affine space: basis shape differs from base shape");
            if (!(b.field() == base_.field())) throw precondition_error("affine space: mixed fields");
        }
        if (alternating_) {
            if (!is_alternating(base_)) throw precondition_error("affine space: base is not alternating");
            for (const auto& b : basis_)
                if (!is_alternating(b)) throw precondition_error("affine space: basis element is not alternating");
        }
        if (vectors_rank(field(), entry_count(), translation_vectors()) != basis_.size())
            throw precondition_error("affine space: translation basis is linearly dependent");
    }

    /// Builds the space base + span(generators), keeping the first maximal
    /// independent subfamily of the generators in order.
    static AffineMatrixSpace from_generators(Matrix<F> base, const std::vector<Matrix<F>>& generators,
                                             bool alternating)
    {
        const F& f = base.field();
        const std::size_t n = base.rows() * base.cols();
        std::vector<Matrix<F>> kept;
        std::vector<Vector<F>> vs;
        for (const auto& g : generators) {
            vs.push_back(g.vectorized());
            if (vectors_rank(f, n, vs) == vs.size()) {
                kept.push_back(g);
            } else {
                vs.pop_back();
            }
        }
        return AffineMatrixSpace(std::move(base), std::move(kept), alternating);
    }

    /// The one-point space {m}.
    static AffineMatrixSpace point(Matrix<F> m, bool alternating)
    {
        return AffineMatrixSpace(std::move(m), {}, alternating);
    }

    const F& field() const noexcept { return base_.field(); }
    const Matrix<F>& base() const noexcept { return base_; }
    const std::vector<Matrix<F>>& basis() const noexcept { return basis_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    std::size_t rows() const noexcept { return base_.rows(); }
    std::size_t cols() const noexcept { return base_.cols(); }
    bool alternating() const noexcept { return alternating_; }
    std::size_t entry_count() const noexcept { return base_.rows() * base_.cols(); }

    std::vector<Vector<F>> translation_vectors() const
    {
        std::vector<Vector<F>> vs;
        vs.reserve(basis_.size());
        for (const auto& b : basis_) vs.push_back(b.vectorized());
        return vs;
    }

    /// base + sum coords_i * basis_i
    Matrix<F> member_at(const Vector<F>& coords) const
    {
        if (coords.size() != basis_.size())
            throw precondition_error("member_at: expected " + std::to_string(basis_.size()) + " coordinates, got " +
                                     std::to_string(coords.size()));
        Matrix<F> m = base_;
        for (std::size_t i = 0; i < coords.size(); ++i) m.add_scaled(coords[i], basis_[i]);
        return m;
    }

    /// Coordinates of m - base in the translation basis, or nullopt.
    std::optional<Vector<F>> translation_coordinates(const Matrix<F>& m) const
    {
        if (m.rows() != rows() || m.cols() != cols()) return std::nullopt;
        return coordinates_in(field(), entry_count(), translation_vectors(), m.vectorized());
    }

    bool translation_contains(const Matrix<F>& m) const { return translation_coordinates(m).has_value(); }
    bool contains(const Matrix<F>& m) const
    {
        if (m.rows() != rows() || m.cols() != cols()) return false;
        return translation_contains(m - base_);
    }

    /// Same set with another base point (which must be a member).
    AffineMatrixSpace rebased(Matrix<F> new_base) const
    {
        if (!contains(new_base)) throw precondition_error("rebased: new base point is not a member");
        return AffineMatrixSpace(std::move(new_base), basis_, alternating_);
    }

private:
    Matrix<F> base_;
    std::vector<Matrix<F>> basis_;
    bool alternating_;
};

/// Set equality: equal dimension, base difference and every basis vector in
/// the other's translation space. Exact linear algebra, no enumeration.
template <Field F>
bool same_set(const AffineMatrixSpace<F>& a, const AffineMatrixSpace<F>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.dimension() != b.dimension()) return false;
    if (!b.translation_contains(a.base() - b.base())) return false;
    for (const auto& g : a.basis())
        if (!b.translation_contains(g)) return false;
    return true;
}

/// Number of members q^dim of a space over a prime field, or nullopt on overflow.
inline std::optional<std::uint64_t> member_count(const AffineMatrixSpace<PrimeField>& sp)
{
    std::uint64_t total = 1;
    const std::uint64_t q = sp.field().characteristic();
    for (std::size_t i = 0; i < sp.dimension(); ++i) {
        if (total > (~std::uint64_t{0}) / q) return std::nullopt;
        total *= q;
    }
    return total;
}

/// Lexicographic coordinates of enumeration index `index` (last coordinate fastest).
inline Vector<PrimeField> coordinates_of_index(const AffineMatrixSpace<PrimeField>& sp, std::uint64_t index)
{
    const std::uint64_t q = sp.field().characteristic();
    Vector<PrimeField> c(sp.dimension(), 0);
    for (std::size_t k = sp.dimension(); k-- > 0;) {
        c[k] = static_cast<std::uint32_t>(index % q);
        index /= q;
    }
    return c;
}

/// Visits members with indices in `range`, in lexicographic coordinate order.
/// fn(index, coords, member).
template <class Fn>
void enumerate_range(const AffineMatrixSpace<PrimeField>& sp, IndexRange range, Fn&& fn)
{
    if (range.begin >= range.end) return;
    const PrimeField& f = sp.field();
    const std::uint32_t q = f.characteristic();
    auto coords = coordinates_of_index(sp, range.begin);
    auto m = sp.member_at(coords);
    for (std::uint64_t idx = range.begin;; ++idx) {
        fn(idx, static_cast<const Vector<PrimeField>&>(coords), static_cast<const Matrix<PrimeField>&>(m));
        if (idx + 1 == range.end) break;
        // odometer step; each changed digit moves by +1 mod p
        for (std::size_t k = sp.dimension(); k-- > 0;) {
            m += sp.basis()[k];
            if (++coords[k] < q) break;
            coords[k] = 0;
        }
    }
}

/// Checks q^dim <= budget and returns q^dim.
inline std::uint64_t checked_member_count(const AffineMatrixSpace<PrimeField>& sp, std::uint64_t budget)
{
    auto total = member_count(sp);
    if (!total || *total > budget)
        throw budget_exceeded("enumeration of " + std::to_string(sp.field().characteristic()) + "^" +
                              std::to_string(sp.dimension()) + " members exceeds budget " + std::to_string(budget));
    return *total;
}

/// Visits every member once, in lexicographic coordinate order.
template <class Fn>
void enumerate(const AffineMatrixSpace<PrimeField>& sp, Fn&& fn, std::uint64_t budget = default_enumeration_budget)
{
    const auto total = checked_member_count(sp, budget);
    enumerate_range(sp, IndexRange{0, total}, std::forward<Fn>(fn));
}

namespace detail {

/// splitmix64 stream used for seeded draws.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform on [0, bound), by rejection.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

inline PrimeField::value_type random_scalar(const PrimeField& f, SeededStream& rng)
{
    return static_cast<PrimeField::value_type>(rng.below(f.characteristic()));
}

inline RationalField::value_type random_scalar(const RationalField& f, SeededStream& rng)
{
    const auto width = static_cast<std::uint64_t>(2 * rational_sample_box + 1);
    return f.from_int(static_cast<std::int64_t>(rng.below(width)) - rational_sample_box);
}

} // namespace detail

/// A seeded random generator of field elements; uniform over F_p and over
/// the integer box [-1000, 1000] for Q.
template <Field F>
class ScalarSampler {
public:
    ScalarSampler(F field, std::uint64_t seed) : field_(std::move(field)), rng_(seed) {}
    typename F::value_type operator()() { return detail::random_scalar(field_, rng_); }
    typename F::value_type nonzero()
    {
        while (true) {
            auto x = (*this)();
            if (!field_.is_zero(x)) return x;
        }
    }
    std::uint64_t below(std::uint64_t bound) { return rng_.below(bound); }

private:
    F field_;
    detail::SeededStream rng_;
};

/// Coordinates of draw `index` of the seeded sample stream. Each draw depends
/// only on (seed, index).
template <Field F>
Vector<F> sample_coordinates(const AffineMatrixSpace<F>& sp, std::uint64_t seed, std::uint64_t index)
{
    ScalarSampler<F> rng(sp.field(), stream_seed(seed, index));
    Vector<F> c;
    c.reserve(sp.dimension());
    for (std::size_t k = 0; k < sp.dimension(); ++k) c.push_back(rng());
    return c;
}

/// Visits draws with indices in `range`. fn(index, coords, member).
template <Field F, class Fn>
void sample_range(const AffineMatrixSpace<F>& sp, std::uint64_t seed, IndexRange range, Fn&& fn)
{
    for (std::uint64_t i = range.begin; i < range.end; ++i) {
        auto c = sample_coordinates(sp, seed, i);
        auto m = sp.member_at(c);
        fn(i, static_cast<const Vector<F>&>(c), static_cast<const Matrix<F>&>(m));
    }
}

/// `count` seeded draws, materialized.
template <Field F>
std::vector<Matrix<F>> sample(const AffineMatrixSpace<F>& sp, std::uint64_t count, std::uint64_t seed)
{
    if (count == 0) throw precondition_error("sample: count must be at least 1");
    std::vector<Matrix<F>> out;
    out.reserve(count);
    sample_range(sp, seed, IndexRange{0, count}, [&](std::uint64_t, const auto&, const auto& m) { out.push_back(m); });
    return out;
}

/// Uniformly random invertible n x n matrix (rejection sampling).
template <Field F>
Matrix<F> random_invertible(const F& f, std::size_t n, ScalarSampler<F>& rng)
{
    while (true) {
        Matrix<F> m(f, n, n);
        for (auto& x : m.entries()) x = rng();
        if (is_invertible(m)) return m;
    }
}

/// { P^T X P : X in sp }
template <Field F>
AffineMatrixSpace<F> congruence_act(const AffineMatrixSpace<F>& sp, const Matrix<F>& p)
{
    if (!p.is_square() || p.rows() != sp.rows() || sp.rows() != sp.cols())
        throw precondition_error("congruence_act: shape mismatch");
    if (!is_invertible(p)) throw precondition_error("congruence_act: P is singular");
    const auto pt = p.transpose();
    std::vector<Matrix<F>> basis;
    basis.reserve(sp.dimension());
    for (const auto& b : sp.basis()) basis.push_back(pt * b * p);
    return AffineMatrixSpace<F>(pt * sp.base() * p, std::move(basis), sp.alternating());
}

/// { P X Q : X in sp }
template <Field F>
AffineMatrixSpace<F> equivalence_act(const AffineMatrixSpace<F>& sp, const Matrix<F>& p, const Matrix<F>& q)
{
    if (!p.is_square() || !q.is_square() || p.rows() != sp.rows() || q.rows() != sp.cols())
        throw precondition_error("equivalence_act: shape mismatch");
    if (!is_invertible(p) || !is_invertible(q)) throw precondition_error("equivalence_act: singular input");
    std::vector<Matrix<F>> basis;
    basis.reserve(sp.dimension());
    for (const auto& b : sp.basis()) basis.push_back(p * b * q);
    auto base = p * sp.base() * q;
    // the alternating flag survives only if every image is still alternating
    bool alt = sp.alternating() && is_alternating(base);
    for (const auto& b : basis) alt = alt && is_alternating(b);
    return AffineMatrixSpace<F>(std::move(base), std::move(basis), alt);
}

/// Block decomposition M = [A B; -B^T D] of an alternating n x n matrix with
/// A in A_r, B in M_{r, n-r}, D in A_{n-r}.
template <Field F>
struct BlockView {
    std::size_t r;
    Matrix<F> a;
    Matrix<F> b;
    Matrix<F> d;

    Matrix<F> assemble() const
    {
        const std::size_t n = r + d.rows();
        Matrix<F> m(a.field(), n, n);
        m.set_block(0, 0, a);
        m.set_block(0, r, b);
        m.set_block(r, 0, -b.transpose());
        m.set_block(r, r, d);
        return m;
    }
};

template <Field F>
BlockView<F> block_view(const Matrix<F>& m, std::size_t r)
{
    if (!is_alternating(m)) throw precondition_error("block_view: matrix is not alternating");
    if (r % 2 != 0 || r > m.rows()) throw precondition_error("block_view: r must be even and at most n");
    const std::size_t n = m.rows();
    return {r, m.block(0, 0, r, r), m.block(0, r, r, n - r), m.block(r, r, n - r, n - r)};
}

/// Every invertible s x s matrix over F_q, in lexicographic entry order.
inline std::vector<Matrix<PrimeField>> general_linear_group(const PrimeField& f, std::size_t s)
{
    const std::uint32_t q = f.characteristic();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s * s; ++i) total *= q;
    std::vector<Matrix<PrimeField>> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        Matrix<PrimeField> m(f, s, s);
        std::uint64_t c = code;
        for (std::size_t k = s * s; k-- > 0;) {
            m.entries()[k] = static_cast<std::uint32_t>(c % q);
            c /= q;
        }
        if (is_invertible(m)) out.push_back(std::move(m));
    }
    return out;
}

/// Rows of a basis of the annihilator of span(family) in F^n.
template <Field F>
std::vector<Vector<F>> annihilator(const F& f, std::size_t n, const std::vector<Vector<F>>& family)
{
    if (family.empty()) {
        std::vector<Vector<F>> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(f, n, i));
        return all;
    }
    return kernel_basis(Matrix<F>::from_rows(f, n, family));
}

/// Exhaustive search for (P, Q) in GL_s(F_q)^2 with P X Q = Y as sets.
/// Envelope: prime field, square s x s with s <= 2, q <= 7.
inline std::optional<std::pair<Matrix<PrimeField>, Matrix<PrimeField>>>
brute_equivalence_test(const AffineMatrixSpace<PrimeField>& x, const AffineMatrixSpace<PrimeField>& y)
{
    const PrimeField& f = x.field();
    const std::size_t s = x.rows();
    if (!(f == y.field())) throw precondition_error("brute_equivalence_test: spaces over different fields");
    if (x.rows() != x.cols() || y.rows() != s || y.cols() != s)
        throw precondition_error("brute_equivalence_test: expects square matrices of equal size");
    if (s > 2 || f.characteristic() > 7)
        throw precondition_error("brute_equivalence_test: outside the brute-force envelope (s <= 2, q <= 7)");
    if (x.dimension() != y.dimension()) return std::nullopt;

    const std::size_t n = s * s;
    const auto ann = annihilator(f, n, y.translation_vectors());
    auto in_translation = [&](const Matrix<PrimeField>& m) {
        for (const auto& phi : ann) {
            std::uint32_t acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(phi[k], m.entries()[k]));
            if (acc != 0) return false;
        }
        return true;
    };
    const auto group = general_linear_group(f, s);
    for (const auto& p : group)
        for (const auto& q : group) {
            if (!in_translation(p * x.base() * q - y.base())) continue;
            bool ok = true;
            for (const auto& g : x.basis())
                if (!in_translation(p * g * q)) {
                    ok = false;
                    break;
                }
            if (ok) return std::make_pair(p, q);
        }
    return std::nullopt;
}

} // namespace altrank

#endif // ALTRANK_SPACE_HPP
