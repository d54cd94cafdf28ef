#ifndef ALTRANK_ANALYZE_HPP
#define ALTRANK_ANALYZE_HPP

// Verification engine: rank profiles of matrix spaces, trivial-spectrum
// scans, and checkers for the Flanders-Atkinson family of block identities
// (pencil / line / alternating forms), the kernel-into-image property, the
// maximal totally-singular-range case, and the vector duality invariant of
// alternating operator spaces.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "altrank/matrix.hpp"
#include "altrank/parallel.hpp"
#include "altrank/space.hpp"
#include "altrank/symplectic.hpp"

namespace altrank {

enum class ProfileMethod { exhaustive, sampled };

inline const char* to_string(ProfileMethod m) { return m == ProfileMethod::exhaustive ? "exhaustive" : "sampled"; }

template <Field F>
struct RankProfile {
    std::size_t min_rank = 0;
    std::size_t max_rank = 0;
    ProfileMethod method = ProfileMethod::exhaustive;
    std::uint64_t members_checked = 0;
    std::uint64_t seed = 0; // meaningful for sampled profiles
    Vector<F> min_witness;
    Vector<F> max_witness;

    bool rank_constant_observed() const noexcept { return min_rank == max_rank; }
    /// Constancy is only proven by exhaustive profiles; sampled ones can at
    /// most fail to falsify it.
    bool constant_proven() const noexcept { return method == ProfileMethod::exhaustive && rank_constant_observed(); }
    const char* constancy() const noexcept
    {
        if (!rank_constant_observed()) return "falsified";
        return method == ProfileMethod::exhaustive ? "proven" : "not falsified";
    }
};

namespace detail {

template <Field F>
std::size_t member_rank(const Matrix<F>& m, bool alternating)
{
    const auto r = rank(m);
    if (alternating && r % 2 != 0)
        throw std::logic_error("odd rank " + std::to_string(r) + " for an alternating matrix");
    return r;
}

template <Field F>
struct ProfileAcc {
    bool any = false;
    std::size_t min_rank = 0, max_rank = 0;
    std::uint64_t min_index = 0, max_index = 0;
    Vector<F> min_coords, max_coords;
    std::uint64_t count = 0;

    void add(std::uint64_t idx, const Vector<F>& c, std::size_t r)
    {
        ++count;
        if (!any || r < min_rank) {
            min_rank = r;
            min_index = idx;
            min_coords = c;
        }
        if (!any || r > max_rank) {
            max_rank = r;
            max_index = idx;
            max_coords = c;
        }
        any = true;
    }

    /// Order-independent merge; ties keep the smaller index.
    void merge(const ProfileAcc& o)
    {
        if (!o.any) return;
        count += o.count;
        if (!any) {
            auto c = count;
            *this = o;
            count = c;
            return;
        }
        if (o.min_rank < min_rank || (o.min_rank == min_rank && o.min_index < min_index)) {
            min_rank = o.min_rank;
            min_index = o.min_index;
            min_coords = o.min_coords;
        }
        if (o.max_rank > max_rank || (o.max_rank == max_rank && o.max_index < max_index)) {
            max_rank = o.max_rank;
            max_index = o.max_index;
            max_coords = o.max_coords;
        }
    }
};

template <Field F>
RankProfile<F> finish(const ProfileAcc<F>& acc, ProfileMethod method, std::uint64_t seed)
{
    RankProfile<F> p;
    p.min_rank = acc.min_rank;
    p.max_rank = acc.max_rank;
    p.method = method;
    p.members_checked = acc.count;
    p.seed = seed;
    p.min_witness = acc.min_coords;
    p.max_witness = acc.max_coords;
    return p;
}

} // namespace detail

/// Exhaustive rank profile over every member (prime fields, q^dim <= budget).
inline RankProfile<PrimeField> exhaustive_rank_profile(const AffineMatrixSpace<PrimeField>& sp,
                                                       std::uint64_t budget = default_enumeration_budget)
{
    const auto total = checked_member_count(sp, budget);
    using Acc = detail::ProfileAcc<PrimeField>;
    auto parts = map_chunks(total, [&](IndexRange range) {
        Acc acc;
        enumerate_range(sp, range, [&](std::uint64_t idx, const auto& c, const auto& m) {
            acc.add(idx, c, detail::member_rank(m, sp.alternating()));
        });
        return acc;
    });
    Acc all;
    for (const auto& p : parts) all.merge(p);
    return detail::finish(all, ProfileMethod::exhaustive, 0);
}

/// Rank profile over `count` seeded draws.
template <Field F>
RankProfile<F> sampled_rank_profile(const AffineMatrixSpace<F>& sp, std::uint64_t count, std::uint64_t seed)
{
    if (count == 0) throw precondition_error("sampled_rank_profile: count must be at least 1");
    using Acc = detail::ProfileAcc<F>;
    auto parts = map_chunks(count, [&](IndexRange range) {
        Acc acc;
        sample_range(sp, seed, range, [&](std::uint64_t idx, const auto& c, const auto& m) {
            acc.add(idx, c, detail::member_rank(m, sp.alternating()));
        });
        return acc;
    });
    Acc all;
    for (const auto& p : parts) all.merge(p);
    return detail::finish(all, ProfileMethod::sampled, seed);
}

/// Exhaustive when the field is prime and q^dim <= budget, sampled otherwise.
template <Field F>
RankProfile<F> rank_profile(const AffineMatrixSpace<F>& sp, std::uint64_t budget = default_enumeration_budget,
                            std::uint64_t seed = 0, std::uint64_t sample_count = default_sample_count)
{
    if constexpr (std::is_same_v<F, PrimeField>) {
        const auto total = member_count(sp);
        if (total && *total <= budget) return exhaustive_rank_profile(sp, budget);
    }
    return sampled_rank_profile(sp, sample_count, seed);
}

/// Outcome of a trivial-spectrum scan.
struct SpectrumReport {
    bool trivial = true;
    std::uint64_t members_checked = 0;
    std::optional<Matrix<PrimeField>> witness;
    std::optional<PrimeField::value_type> eigenvalue;
};

/// True iff no member of the linear space has a nonzero eigenvalue in F_p.
/// Eigenvalue sets scale with the member, so only members whose first
/// nonzero coordinate is 1 are scanned.
inline SpectrumReport trivial_spectrum_check(const AffineMatrixSpace<PrimeField>& sp,
                                             std::uint64_t budget = default_enumeration_budget)
{
    if (!sp.base().is_zero()) throw precondition_error("trivial_spectrum_check: expects a linear space (zero base)");
    if (sp.rows() != sp.cols()) throw precondition_error("trivial_spectrum_check: matrices must be square");
    checked_member_count(sp, budget);
    const PrimeField& f = sp.field();
    const std::uint64_t q = f.characteristic();
    const std::size_t d = sp.dimension();

    struct Out {
        std::uint64_t checked = 0;
        std::optional<std::pair<std::uint64_t, Matrix<PrimeField>>> hit; // (global index, member)
        PrimeField::value_type eigen = 0;
    };
    // Leading coordinate k equal to 1, coordinates before k zero, after k free.
    std::uint64_t offset = 0;
    SpectrumReport report;
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::uint64_t block = 1;
        for (std::size_t t = lead + 1; t < d; ++t) block *= q;
        auto parts = map_chunks(block, [&](IndexRange range) {
            Out out;
            for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
                Vector<PrimeField> c(d, 0);
                c[lead] = 1;
                std::uint64_t rest = idx;
                for (std::size_t t = d; t-- > lead + 1;) {
                    c[t] = static_cast<std::uint32_t>(rest % q);
                    rest /= q;
                }
                auto m = sp.member_at(c);
                ++out.checked;
                const auto chi = characteristic_polynomial(m);
                for (std::uint64_t l = 1; l < q; ++l)
                    if (f.is_zero(evaluate_polynomial(f, chi, f.element(l)))) {
                        out.hit.emplace(offset + idx, std::move(m));
                        out.eigen = f.element(l);
                        return out;
                    }
            }
            return out;
        });
        for (auto& p : parts) {
            report.members_checked += p.checked;
            if (p.hit && report.trivial) {
                report.trivial = false;
                report.witness = std::move(p.hit->second);
                report.eigenvalue = p.eigen;
            }
        }
        if (!report.trivial) return report;
        offset += block;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Flanders-Atkinson family

struct PencilMode {};
struct LineMode {};
template <Field F>
struct AlternatingMode {
    AlternatingMatrix<F> k;
};

template <Field F>
using FAMode = std::variant<PencilMode, LineMode, AlternatingMode<F>>;

template <Field F>
struct FAReport {
    bool hypothesis_held = false;
    bool cardinality_hypothesis_met = false;
    std::uint64_t scan_points = 0;
    /// (s, t) with rank(s J + t M) > r when the hypothesis fails.
    std::optional<std::pair<typename F::value_type, typename F::value_type>> hypothesis_witness;
    std::optional<bool> d_zero;
    std::vector<bool> moment_vanishing; // k = 0 .. r-1
    /// (k, offending product); k = -1 reports D != 0.
    std::optional<std::pair<int, Matrix<F>>> first_failure;

    bool conclusions_hold() const
    {
        if (!hypothesis_held || !d_zero || !*d_zero) return false;
        for (bool b : moment_vanishing)
            if (!b) return false;
        return true;
    }
};

namespace detail {

template <Field F>
std::vector<std::pair<typename F::value_type, typename F::value_type>> scan_points(const F& f, bool pencil,
                                                                                  std::size_t r)
{
    std::vector<std::pair<typename F::value_type, typename F::value_type>> pts;
    if constexpr (std::is_same_v<F, PrimeField>) {
        const std::uint64_t q = f.characteristic();
        if (pencil) {
            for (std::uint64_t s = 0; s < q; ++s)
                for (std::uint64_t t = 0; t < q; ++t) pts.emplace_back(f.element(s), f.element(t));
        } else {
            for (std::uint64_t t = 0; t < q; ++t) pts.emplace_back(f.one(), f.element(t));
        }
    } else {
        // Every (r+1)-minor of s J + t M is a (homogeneous) polynomial of
        // degree <= r+1; vanishing at r+2 distinct (projective) points forces
        // it to vanish identically.
        for (std::size_t t = 0; t < r + 2; ++t) pts.emplace_back(f.one(), f.from_int(static_cast<std::int64_t>(t)));
        if (pencil) pts.emplace_back(f.zero(), f.one());
    }
    return pts;
}

} // namespace detail

/// Scans the rank hypothesis exactly as stated by the mode and, when it
/// holds, checks D = 0 and the moment identities for k = 0 .. r-1.
///
/// Pencil / line: M = [A C; B D] with A r x r, J = J_r; moments B A^k C.
/// Alternating(K): M = [A B; -B^T D] with A, K r x r, J = K (+) 0; moments
/// B^T K^{-1} (A K^{-1})^k B.
template <Field F>
FAReport<F> flanders_atkinson_check(const Matrix<F>& m, std::size_t r, const FAMode<F>& mode)
{
    const F& f = m.field();
    const std::size_t n = m.rows(), p = m.cols();
    if (r == 0 || r > std::min(n, p)) throw precondition_error("flanders_atkinson_check: need 0 < r <= min(n, p)");
    const bool pencil = std::holds_alternative<PencilMode>(mode);
    const auto* alt = std::get_if<AlternatingMode<F>>(&mode);

    Matrix<F> j(f, n, p);
    if (alt) {
        if (alt->k.size() != r || n != p) throw precondition_error("flanders_atkinson_check: K must be r x r and M square");
        if (rank(alt->k) != r) throw precondition_error("flanders_atkinson_check: K is singular");
        if (!is_alternating(m)) throw precondition_error("flanders_atkinson_check: M is not alternating");
        j.set_block(0, 0, alt->k.matrix());
    } else {
        for (std::size_t i = 0; i < r; ++i) j(i, i) = f.one();
    }

    FAReport<F> rep;
    // pencil: |F| > r; line: |F| > r + 1; alternating: |F| > r/2 + 1
    const std::uint64_t need = pencil ? r + 1 : alt ? r / 2 + 2 : r + 2;
    rep.cardinality_hypothesis_met = cardinality_at_least(f, need);

    rep.hypothesis_held = true;
    for (const auto& [s, t] : detail::scan_points(f, pencil, r)) {
        ++rep.scan_points;
        Matrix<F> x = j.scaled(s);
        x.add_scaled(t, m);
        if (rank(x) > r) {
            rep.hypothesis_held = false;
            rep.hypothesis_witness = std::make_pair(s, t);
            break;
        }
    }
    if (!rep.hypothesis_held) return rep;

    const Matrix<F> d = m.block(r, r, n - r, p - r);
    rep.d_zero = d.is_zero();
    if (!*rep.d_zero) rep.first_failure = std::make_pair(-1, d);

    const Matrix<F> a = m.block(0, 0, r, r);
    Matrix<F> left(f, 0, 0), right(f, 0, 0), step(f, 0, 0);
    if (alt) {
        const auto kinv = inverse(alt->k.matrix());
        const Matrix<F> b = m.block(0, r, r, p - r);
        left = b.transpose() * kinv;
        step = a * kinv;
        right = b;
    } else {
        left = m.block(r, 0, n - r, r); // B
        step = a;
        right = m.block(0, r, r, p - r); // C
    }
    // left * step^k * right
    Matrix<F> cur = left;
    for (std::size_t k = 0; k < r; ++k) {
        const Matrix<F> prod = cur * right;
        const bool zero = prod.is_zero();
        rep.moment_vanishing.push_back(zero);
        if (!zero && !rep.first_failure) rep.first_failure = std::make_pair(static_cast<int>(k), prod);
        cur = cur * step;
    }
    return rep;
}

// ---------------------------------------------------------------------------

template <Field F>
struct KernelImageReport {
    bool holds = true;
    bool cardinality_hypothesis_met = false; // |F| > rank(u0)
    std::optional<std::pair<std::size_t, Vector<F>>> witness; // (generator index, kernel vector)
};

/// Whether every element of span(generators) maps Ker u0 into Im u0. Only
/// asserted by callers when the cardinality hypothesis holds and u0 has
/// maximal rank in the space; otherwise the report is exploratory.
template <Field F>
KernelImageReport<F> kernel_to_image_check(const std::vector<Matrix<F>>& generators, const Matrix<F>& u0)
{
    const F& f = u0.field();
    KernelImageReport<F> rep;
    const auto r0 = rank(u0);
    rep.cardinality_hypothesis_met = cardinality_at_least(f, r0 + 1);
    const auto kernel = kernel_basis(u0);
    std::vector<Vector<F>> image;
    for (std::size_t j = 0; j < u0.cols(); ++j) image.push_back(u0.column_vector(j));
    for (std::size_t g = 0; g < generators.size(); ++g)
        for (const auto& x : kernel) {
            if (!in_span(f, u0.rows(), image, generators[g].apply(x))) {
                rep.holds = false;
                rep.witness = std::make_pair(g, x);
                return rep;
            }
        }
    return rep;
}

/// Whether every element of span(maps) has its range totally singular for
/// the form b. By polarization it suffices that u^T b u = 0 for each
/// generator and u^T b v + v^T b u = 0 for each pair (|F| >= 3 makes this
/// also necessary).
template <Field F>
bool ranges_totally_singular(const std::vector<Matrix<F>>& maps, const Matrix<F>& b)
{
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto ti = maps[i].transpose();
        if (!(ti * b * maps[i]).is_zero()) return false;
        for (std::size_t j = i + 1; j < maps.size(); ++j)
            if (!(ti * b * maps[j] + maps[j].transpose() * b * maps[i]).is_zero()) return false;
    }
    return true;
}

/// Equality case of the totally-singular-range bound: for a linear space V of
/// maps U -> U' (as dim U' x dim U matrices) whose ranges are totally
/// b-singular, with dim V = dim U * dim U' / 2 and dim U > 2, recovers the
/// Lagrangian L with V = Hom(U, L). Returns nullopt when dim V is below the
/// bound.
template <Field F>
std::optional<Lagrangian<F>> lagrangian_from_ranges(const std::vector<Matrix<F>>& maps, const AlternatingMatrix<F>& b)
{
    const F& f = b.field();
    const std::size_t target = b.size();
    if (rank(b) != target) throw precondition_error("lagrangian_from_ranges: form is not symplectic");
    if (maps.empty()) return std::nullopt;
    const std::size_t source = maps.front().cols();
    for (const auto& u : maps)
        if (u.rows() != target || u.cols() != source) throw precondition_error("lagrangian_from_ranges: map shape mismatch");
    if (source <= 2) throw precondition_error("lagrangian_from_ranges: needs dim U > 2");
    if (!ranges_totally_singular(maps, b.matrix()))
        throw precondition_error("lagrangian_from_ranges: some range is not totally singular");

    std::vector<Vector<F>> vs;
    for (const auto& u : maps) vs.push_back(u.vectorized());
    const std::size_t dim_v = vectors_rank(f, target * source, vs);
    const std::size_t bound = source * target / 2;
    if (dim_v > bound)
        throw precondition_error("lagrangian_from_ranges: dim V = " + std::to_string(dim_v) + " exceeds the bound " +
                                 std::to_string(bound));
    if (dim_v < bound) return std::nullopt;

    std::vector<Vector<F>> cols;
    for (const auto& u : maps)
        for (std::size_t j = 0; j < source; ++j) cols.push_back(u.column_vector(j));
    auto l = span_basis(f, target, cols);
    if (2 * l.size() != target || dim_v != source * l.size())
        throw std::logic_error("lagrangian_from_ranges: equality case failed (sum of ranges has dimension " +
                               std::to_string(l.size()) + ")");
    return Lagrangian<F>(b, std::move(l));
}

// ---------------------------------------------------------------------------

template <Field F>
struct DualityReport {
    bool holds = true;
    std::uint64_t vectors_checked = 0;
    std::optional<Vector<F>> witness;
};

/// For each standard basis vector and `random_vectors` seeded random nonzero
/// x: F x and S x meet only in 0, and S x together with x lies in the
/// K-orthogonal of x. The operator space is assumed to have trivial spectrum.
template <Field F>
DualityReport<F> duality_invariant_holds(const FormSpacePair<F>& pair, std::uint64_t seed = 0,
                                         std::size_t random_vectors = 100)
{
    const F& f = pair.gram().field();
    const std::size_t n = pair.size();
    const Matrix<F>& k = pair.gram().matrix();
    DualityReport<F> rep;
    auto check = [&](const Vector<F>& x) {
        ++rep.vectors_checked;
        std::vector<Vector<F>> sx;
        for (const auto& m : pair.operators()) sx.push_back(m.apply(x));
        const auto r = vectors_rank(f, n, sx);
        sx.push_back(x);
        if (vectors_rank(f, n, sx) != r + 1) return false;
        for (const auto& y : sx)
            if (!f.is_zero(bilinear(k, x, y))) return false;
        return true;
    };
    std::vector<Vector<F>> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(unit_vector(f, n, i));
    ScalarSampler<F> rng(f, stream_seed(seed, 0xd0a1));
    while (xs.size() < n + random_vectors && n > 0) {
        Vector<F> x(n);
        for (auto& v : x) v = rng();
        if (!is_zero_vector(f, x)) xs.push_back(std::move(x));
    }
    for (const auto& x : xs)
        if (!check(x)) {
            rep.holds = false;
            rep.witness = x;
            return rep;
        }
    return rep;
}

/// Prime-field entry point: certifies trivial spectrum first and rejects the
/// input if it fails.
inline DualityReport<PrimeField> duality_invariant_check(const FormSpacePair<PrimeField>& pair, std::uint64_t seed = 0,
                                                         std::uint64_t budget = default_enumeration_budget)
{
    const auto spectrum = trivial_spectrum_check(pair.operator_space(), budget);
    if (!spectrum.trivial)
        throw precondition_error("duality_invariant_check: operator space does not have trivial spectrum");
    return duality_invariant_holds(pair, seed);
}

// ---------------------------------------------------------------------------

/// A space re-expressed by a congruence so that its base point is K (+) 0
/// with K invertible r x r (the radical of the base spans the last n - r
/// coordinates).
template <Field F>
struct JKForm {
    Matrix<F> p;                 // congruence used: space = P^T (input) P
    AffineMatrixSpace<F> space;  // base is K (+) 0
    AlternatingMatrix<F> k;
};

/// Re-bases at `s0` (a member of rank r) and moves its radical to the last
/// coordinates.
template <Field F>
JKForm<F> to_jk_form(const AffineMatrixSpace<F>& sp, const Matrix<F>& s0)
{
    const F& f = sp.field();
    const std::size_t n = sp.rows();
    if (!sp.alternating()) throw precondition_error("to_jk_form: space is not alternating");
    auto rad = kernel_basis(s0);
    const std::size_t r = n - rad.size();
    auto comp = complete_with_standard_basis(f, n, rad);
    std::vector<Vector<F>> cols = comp;
    cols.insert(cols.end(), rad.begin(), rad.end());
    Matrix<F> p = Matrix<F>::from_columns(f, n, cols);
    auto moved = congruence_act(sp.rebased(s0), p);
    AlternatingMatrix<F> k(moved.base().block(0, 0, r, r));
    return {std::move(p), std::move(moved), std::move(k)};
}

} // namespace altrank

#endif // ALTRANK_ANALYZE_HPP
