#ifndef ALTRANK_REDUCE_HPP
#define ALTRANK_REDUCE_HPP

// Canonical form of constant-rank-r affine spaces of alternating matrices of
// critical dimension s(n-s-1), n >= r+3: a congruence carrying the space onto
// M~_alt^(n) built from an inner family M of invertible s x s matrices, and
// the uniqueness check for the totally singular (n-s)-dimensional subspace.
//
// Every step is verified at run time; failed checks land in the certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "altrank/analyze.hpp"
#include "altrank/families.hpp"
#include "altrank/matrix.hpp"
#include "altrank/space.hpp"
#include "altrank/symplectic.hpp"

namespace altrank {

/// A verification point of a reduction did not hold.
struct contract_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReduceOptions {
    std::uint64_t budget = default_enumeration_budget; // exhaustive constant-rank check
    std::uint64_t rank_samples = 10'000;               // used above the budget
    bool constant_rank_certified = false;              // skip the constant-rank check
    std::uint64_t seed = 0;
    std::size_t uniqueness_candidates = 200;
};

struct ReductionVerdicts {
    bool base_point_rank = false;
    bool moment_identities = false;
    bool lagrangian_extraction = false;
    bool lagrangian_singular = false;
    bool symplectic_normal_form = false;
    bool column_reduction = false;
    bool complement_uniqueness = false;
    bool final_set_equality = false;

    bool all() const noexcept
    {
        return base_point_rank && moment_identities && lagrangian_extraction && lagrangian_singular && symplectic_normal_form &&
               column_reduction && complement_uniqueness && final_set_equality;
    }

    std::vector<std::pair<std::string, bool>> named() const
    {
        return {{"base_point_rank", base_point_rank},       {"moment_identities", moment_identities},
                {"lagrangian_extraction", lagrangian_extraction}, {"lagrangian_singular", lagrangian_singular},
                {"symplectic_normal_form", symplectic_normal_form},   {"column_reduction", column_reduction},
                {"complement_uniqueness", complement_uniqueness},     {"final_set_equality", final_set_equality}};
    }
};

template <Field F>
struct ReductionCertificate {
    ReductionVerdicts verdicts;
    std::string constant_rank_method; // exhaustive | sampled | certified
    std::optional<Matrix<F>> p;       // congruence_act(input, P) = M~_alt(recovered_M)
    std::vector<Vector<F>> lagrangian;
    std::optional<AffineMatrixSpace<F>> recovered_m;
    std::vector<std::pair<std::string, std::string>> witnesses; // (step, description)

    bool ok() const noexcept { return verdicts.all(); }
};

template <Field F>
struct ColumnNormalForm {
    Matrix<F> q;       // s x s
    Matrix<F> q_prime; // p x p
    AffineMatrixSpace<F> m;
};

namespace detail {

template <Field F>
std::string describe(const Vector<F>& v, const F& f)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f.to_string(v[i]);
    return s + ")";
}

template <Field F>
std::string describe(const Matrix<F>& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m.field().to_string(m(i, j));
    }
    return s + "]";
}

/// Checks that every member of `sp` is invertible: exhaustive over F_p up to
/// the budget, seeded samples otherwise.
template <Field F>
bool all_members_invertible(const AffineMatrixSpace<F>& sp, std::uint64_t budget, std::uint64_t samples,
                            std::uint64_t seed)
{
    return rank_profile(sp, budget, seed, samples).min_rank == sp.rows();
}

} // namespace detail

/// Constructive equivalence of an affine space T of s x p matrices (full row
/// rank, codimension s(s+1)/2) with {[B C] : B in M}. Q is the identity; the
/// column change Q' sends the column-universal subspace W to the last p - s
/// coordinates. Throws contract_violation if a verification point fails.
template <Field F>
ColumnNormalForm<F> column_normal_form(const AffineMatrixSpace<F>& t, std::uint64_t budget = default_enumeration_budget,
                                    std::uint64_t samples = 10'000, std::uint64_t seed = 0)
{
    const F& f = t.field();
    const std::size_t s = t.rows(), p = t.cols();
    if (s == 0 || p < s) throw precondition_error("column_normal_form: need 1 <= s <= p");
    const std::size_t expected_dim = s * p - s * (s + 1) / 2;
    if (t.dimension() != expected_dim)
        throw precondition_error("column_normal_form: expected dimension " + std::to_string(expected_dim) + ", got " +
                                 std::to_string(t.dimension()));

    // W = { v : e_i v^T in T-> for all i }, cut out by the annihilator of T->.
    const auto phi = annihilator(f, s * p, t.translation_vectors());
    Matrix<F> cond(f, phi.size() * s, p);
    for (std::size_t a = 0; a < phi.size(); ++a)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < p; ++j) cond(a * s + i, j) = phi[a][i * p + j];
    const auto w = kernel_basis(cond);
    if (w.size() != p - s)
        throw contract_violation("column_normal_form: column-universal subspace has dimension " +
                                 std::to_string(w.size()) + ", expected " + std::to_string(p - s));

    std::vector<Vector<F>> rows = complete_with_standard_basis(f, p, w);
    rows.insert(rows.end(), w.begin(), w.end());
    const Matrix<F> q_prime = inverse(Matrix<F>::from_rows(f, p, rows));
    const Matrix<F> q = Matrix<F>::identity(f, s);

    const auto moved = equivalence_act(t, q, q_prime);
    std::vector<Matrix<F>> gens;
    for (const auto& g : moved.basis()) gens.push_back(g.block(0, 0, s, s));
    auto m = AffineMatrixSpace<F>::from_generators(moved.base().block(0, 0, s, s), gens, false);
    if (m.dimension() != s * (s - 1) / 2)
        throw contract_violation("column_normal_form: inner family has dimension " + std::to_string(m.dimension()));
    if (!detail::all_members_invertible(m, budget, samples, seed))
        throw contract_violation("column_normal_form: inner family contains a singular matrix");
    if (!same_set(moved, build_m_tilde_rect(p, m)))
        throw contract_violation("column_normal_form: Q T Q' differs from {[B C] : B in M}");
    return {q, q_prime, std::move(m)};
}

template <Field F>
struct UniquenessReport {
    bool holds = true;
    std::vector<Vector<F>> subspace; // e_{s+1}, ..., e_n
    std::size_t candidates_rejected = 0;
    std::vector<std::string> failures;
    /// (candidate index, generator index or -1 for the base, x, y)
    std::vector<std::tuple<std::size_t, int, Vector<F>, Vector<F>>> witnesses;
};

/// For a space in canonical form [A B C; -B^T 0 0; -C^T 0 0] (blocks s, s,
/// n-2s): span(e_{s+1}, ..., e_n) is totally singular for every member, the
/// A_s block and the C block are full in the translation space, n-s-1 > s,
/// and seeded perturbations of the subspace are each rejected with a witness
/// b(x, y) != 0.
template <Field F>
UniquenessReport<F> unique_totally_singular_complement(const AffineMatrixSpace<F>& sp, std::size_t s,
                                                       std::size_t candidates = 200, std::uint64_t seed = 0)
{
    const F& f = sp.field();
    const std::size_t n = sp.rows();
    if (!sp.alternating() || s == 0 || n < 2 * s + 3)
        throw precondition_error("unique_totally_singular_complement: need an alternating space with n >= 2s + 3");
    UniquenessReport<F> rep;
    for (std::size_t i = s; i < n; ++i) rep.subspace.push_back(unit_vector(f, n, i));

    std::vector<Matrix<F>> forms{sp.base()};
    forms.insert(forms.end(), sp.basis().begin(), sp.basis().end());
    auto singular_for_all = [&](const std::vector<Vector<F>>& basis, auto&& on_witness) {
        for (std::size_t b = 0; b < forms.size(); ++b)
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = i + 1; j < basis.size(); ++j)
                    if (!f.is_zero(bilinear(forms[b], basis[i], basis[j]))) {
                        on_witness(static_cast<int>(b) - 1, basis[i], basis[j]);
                        return false;
                    }
        return true;
    };
    auto fail = [&](std::string why) {
        rep.holds = false;
        rep.failures.push_back(std::move(why));
    };

    if (!singular_for_all(rep.subspace, [](int, const auto&, const auto&) {}))
        throw precondition_error("unique_totally_singular_complement: space is not in canonical form");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            if (!sp.translation_contains(alternating_unit(f, n, i, j)))
                fail("A-block unit (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") missing");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 2 * s; j < n; ++j)
            if (!sp.translation_contains(alternating_unit(f, n, i, j)))
                fail("C-block unit (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") missing");
    if (!(n - s - 1 > s)) fail("dimension condition n - s - 1 > s fails");

    ScalarSampler<F> rng(f, stream_seed(seed, 0x57e4));
    const std::size_t dim = n - s;
    for (std::size_t c = 0; c < candidates;) {
        // mix the subspace, then push one vector out of it
        std::vector<Vector<F>> cand;
        const Matrix<F> mix = random_invertible(f, dim, rng);
        for (std::size_t k = 0; k < dim; ++k) {
            Vector<F> v(n, f.zero());
            for (std::size_t t = 0; t < dim; ++t) v[s + t] = mix(t, k);
            cand.push_back(std::move(v));
        }
        const std::size_t victim = rng.below(dim);
        const std::size_t into = rng.below(s);
        cand[victim][into] = f.add(cand[victim][into], rng.nonzero());
        for (std::size_t t = 0; t < s; ++t)
            if (t != into) cand[victim][t] = f.add(cand[victim][t], rng());
        if (vectors_rank(f, n, cand) != dim) continue; // degenerate draw, redrawn
        bool rejected = false;
        singular_for_all(cand, [&](int b, const Vector<F>& x, const Vector<F>& y) {
            rejected = true;
            rep.witnesses.emplace_back(c, b, x, y);
        });
        if (rejected) {
            ++rep.candidates_rejected;
        } else {
            fail("candidate " + std::to_string(c) + " is totally singular as well");
        }
        ++c;
    }
    return rep;
}

/// Reduces `input` (constant rank r, dimension s(n-s-1), n >= r+3) to
/// M~_alt^(n). Throws precondition_error on malformed input; mathematical
/// failures are recorded in the returned certificate.
template <Field F>
ReductionCertificate<F> reduce(const AffineMatrixSpace<F>& input, std::size_t r, const ReduceOptions& opts = {})
{
    const F& f = input.field();
    const std::size_t n = input.rows();
    if (!input.alternating()) throw precondition_error("reduce: space is not alternating");
    if (r == 0 || r % 2 != 0) throw precondition_error("reduce: r must be positive and even");
    const std::size_t s = r / 2;
    if (n < r + 3) throw precondition_error("reduce: requires n >= r + 3 (got n = " + std::to_string(n) + ")");
    const std::uint64_t need = std::max<std::uint64_t>(r - 1, 2 + s);
    if (!cardinality_at_least(f, need))
        throw precondition_error("reduce: field must have at least " + std::to_string(need) + " elements");
    const std::size_t dim = s * (n - s - 1);
    if (input.dimension() != dim)
        throw precondition_error("reduce: expected dimension s(n-s-1) = " + std::to_string(dim) + ", got " +
                                 std::to_string(input.dimension()));

    ReductionCertificate<F> cert;
    auto witness = [&](const std::string& step, std::string what) { cert.witnesses.emplace_back(step, std::move(what)); };

    if (opts.constant_rank_certified) {
        cert.constant_rank_method = "certified";
    } else {
        const auto prof = rank_profile(input, opts.budget, opts.seed, opts.rank_samples);
        cert.constant_rank_method = to_string(prof.method);
        if (prof.min_rank != r || prof.max_rank != r)
            throw precondition_error("reduce: space does not have constant rank " + std::to_string(r) + " (observed " +
                                     std::to_string(prof.min_rank) + ".." + std::to_string(prof.max_rank) + ")");
    }

    // (a) base point of rank r, in enumeration or sample order
    std::optional<Matrix<F>> s0;
    if (rank(input.base()) == r) {
        s0 = input.base();
    } else {
        const std::uint64_t tries = 4096;
        for (std::uint64_t i = 0; i < tries && !s0; ++i) {
            Matrix<F> m = input.base();
            if constexpr (std::is_same_v<F, PrimeField>) {
                const auto total = member_count(input);
                if (total && i >= *total) break;
                m = input.member_at(coordinates_of_index(input, i));
            } else {
                m = input.member_at(sample_coordinates(input, opts.seed, i));
            }
            if (rank(m) == r) s0 = m;
        }
    }
    if (!s0) {
        witness("base_point_rank", "no member of rank r found");
        return cert;
    }
    cert.verdicts.base_point_rank = true;

    // (b) radical of s0 to the last n - r coordinates
    const auto jk = to_jk_form(input, *s0);
    const auto& sp1 = jk.space;
    const Matrix<F>& km = jk.k.matrix();
    const auto kinv = inverse(km);

    // (c) D = 0 and the moment identities for every generator
    cert.verdicts.moment_identities = true;
    for (std::size_t g = 0; g < sp1.dimension(); ++g) {
        const auto fa = flanders_atkinson_check<F>(sp1.basis()[g], r, AlternatingMode<F>{jk.k});
        if (!fa.conclusions_hold()) {
            cert.verdicts.moment_identities = false;
            std::string why = "generator " + std::to_string(g) + ": ";
            if (!fa.hypothesis_held) {
                why += "rank hypothesis fails";
            } else if (fa.first_failure) {
                why += fa.first_failure->first < 0 ? std::string("D != 0")
                                                   : "moment k=" + std::to_string(fa.first_failure->first) + " = " +
                                                         detail::describe(fa.first_failure->second);
            }
            witness("moment_identities", why);
            break;
        }
    }
    if (!cert.verdicts.moment_identities) return cert;

    // (d) Lagrangian from the maps K^{-1} B(b)
    std::vector<Matrix<F>> bmaps, kbmaps;
    for (const auto& g : sp1.basis()) {
        bmaps.push_back(g.block(0, r, r, n - r));
        kbmaps.push_back(kinv * bmaps.back());
    }
    std::optional<Lagrangian<F>> lag;
    try {
        lag = lagrangian_from_ranges(kbmaps, jk.k);
        if (!lag) witness("lagrangian_extraction", "dim K^{-1}B(S) is below s(n-r)");
    } catch (const std::exception& e) {
        witness("lagrangian_extraction", e.what());
    }
    if (!lag) return cert;
    cert.verdicts.lagrangian_extraction = true;
    cert.lagrangian = lag->basis();
    const Matrix<F> lmat = Matrix<F>::from_columns(f, r, lag->basis());

    // (e) L totally A(b)-singular for every generator, plus the first-moment
    // identity along a section theta: B(S) -> S of least-index preimages
    cert.verdicts.lagrangian_singular = true;
    for (std::size_t g = 0; g < sp1.dimension() && cert.verdicts.lagrangian_singular; ++g) {
        const Matrix<F> a = sp1.basis()[g].block(0, 0, r, r);
        if (!(lmat.transpose() * a * lmat).is_zero()) {
            cert.verdicts.lagrangian_singular = false;
            witness("lagrangian_singular", "L is not totally singular for A of generator " + std::to_string(g));
        }
    }
    if (cert.verdicts.lagrangian_singular) {
        std::vector<Vector<F>> bvecs;
        for (const auto& b : bmaps) bvecs.push_back(b.vectorized());
        const auto image = span_basis(f, r * (n - r), bvecs);
        const Matrix<F> bcols = Matrix<F>::from_columns(f, r * (n - r), bvecs);
        std::vector<Matrix<F>> theta; // theta(N_j)
        for (const auto& nj : image) {
            const auto c = solve(bcols, nj);
            if (!c) throw std::logic_error("reduce: B-image vector without preimage");
            Matrix<F> t(f, n, n);
            for (std::size_t k = 0; k < c->size(); ++k) t.add_scaled((*c)[k], sp1.basis()[k]);
            theta.push_back(std::move(t));
        }
        auto identity_two = [&](const Matrix<F>& th) {
            const Matrix<F> kn = kinv * th.block(0, r, r, n - r);
            return (kn.transpose() * th.block(0, 0, r, r) * kn).is_zero();
        };
        ScalarSampler<F> rng(f, stream_seed(opts.seed, 0x1d2));
        for (std::size_t trial = 0; trial < theta.size() + 20 && cert.verdicts.lagrangian_singular; ++trial) {
            Matrix<F> th(f, n, n);
            if (trial < theta.size()) {
                th = theta[trial];
            } else {
                for (const auto& t : theta) th.add_scaled(rng(), t);
            }
            if (!identity_two(th)) {
                cert.verdicts.lagrangian_singular = false;
                witness("lagrangian_singular", "identity (K^{-1}N)^T A(theta(N)) K^{-1}N = 0 fails at theta(N) = " +
                                                 detail::describe(th));
            }
        }
    }
    if (!cert.verdicts.lagrangian_singular) return cert;

    // (f) K to the standard symplectic matrix with L = {0} x F^s
    const Matrix<F> p1 = symplectic_basis(jk.k, lag);
    const Matrix<F> pf = direct_sum(p1, Matrix<F>::identity(f, n - r));
    const auto sp2 = congruence_act(sp1, pf);
    {
        const Matrix<F> expected_base =
            direct_sum(AlternatingMatrix<F>::standard_symplectic(f, s).matrix(), Matrix<F>(f, n - r, n - r));
        bool ok = sp2.base() == expected_base;
        if (!ok) witness("symplectic_normal_form", "base is not J (+) 0");
        for (std::size_t g = 0; g < sp2.dimension() && ok; ++g)
            if (!sp2.basis()[g].block(s, s, n - s, n - s).is_zero()) {
                ok = false;
                witness("symplectic_normal_form", "generator " + std::to_string(g) + " has a nonzero lower-right block");
            }
        cert.verdicts.symplectic_normal_form = ok;
    }
    if (!cert.verdicts.symplectic_normal_form) return cert;

    // (g) the top-right s x (n-s) block R(S), reduced by a column change
    std::vector<Matrix<F>> rgens;
    for (const auto& g : sp2.basis()) rgens.push_back(g.block(0, s, s, n - s));
    const auto t = AffineMatrixSpace<F>::from_generators(sp2.base().block(0, s, s, n - s), rgens, false);
    std::optional<ColumnNormalForm<F>> t11;
    try {
        t11 = column_normal_form(t, opts.budget, opts.rank_samples, opts.seed);
    } catch (const std::exception& e) {
        witness("column_reduction", e.what());
    }
    if (!t11) return cert;
    cert.verdicts.column_reduction = true;
    cert.recovered_m = t11->m;

    const Matrix<F> pc = direct_sum(t11->q.transpose(), t11->q_prime);
    const Matrix<F> p_total = jk.p * pf * pc;
    cert.p = p_total;

    // (h) independent final check against the canonical family
    const auto canonical = congruence_act(input, p_total);
    try {
        const auto target = build_m_tilde_alt(n, s, t11->m);
        cert.verdicts.final_set_equality = same_set(canonical, target);
        if (!cert.verdicts.final_set_equality) witness("final_set_equality", "P^T S P differs from M~_alt(M)");
    } catch (const std::exception& e) {
        witness("final_set_equality", e.what());
    }

    // uniqueness of the totally singular complement
    try {
        const auto uq = unique_totally_singular_complement(canonical, s, opts.uniqueness_candidates, opts.seed);
        cert.verdicts.complement_uniqueness = uq.holds;
        for (const auto& why : uq.failures) witness("complement_uniqueness", why);
    } catch (const std::exception& e) {
        witness("complement_uniqueness", e.what());
    }
    return cert;
}

} // namespace altrank

#endif // ALTRANK_REDUCE_HPP
