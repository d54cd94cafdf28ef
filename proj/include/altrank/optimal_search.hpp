#ifndef ALTRANK_OPTIMAL_SEARCH_HPP
#define ALTRANK_OPTIMAL_SEARCH_HPP

// Exhaustive search for the largest affine subspace of A_n(F_q) whose members
// all satisfy a rank predicate. Linear subspaces are enumerated once each via
// their reduced row echelon representatives; cosets are represented by
// vectors vanishing on the pivot columns, so every affine subspace is visited
// exactly once.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altrank/matrix.hpp"
#include "altrank/parallel.hpp"
#include "altrank/space.hpp"

namespace altrank {

enum class RankPredicate { constant_rank, rank_at_least };

struct OptimalSearchOptions {
    /// Upper bound on (number of affine subspaces examined) x (members each),
    /// summed over the dimensions searched.
    std::uint64_t work_budget = 200'000'000;
};

struct DimensionScan {
    std::size_t dimension;
    std::uint64_t subspaces;       // linear subspaces of this dimension
    std::uint64_t affine_examined; // (subspace, coset) pairs actually checked
    bool found;
};

struct OptimalSearchResult {
    /// Largest dimension with a satisfying affine subspace; -1 if not even a
    /// single matrix satisfies the predicate.
    int max_dimension = -1;
    /// A satisfying space of dimension max_dimension.
    std::optional<AffineMatrixSpace<PrimeField>> witness;
    std::vector<DimensionScan> scans;
};

namespace detail {

using Digits = std::vector<std::uint8_t>;

/// All d x N reduced row echelon matrices over F_q, each as d row vectors.
inline std::vector<std::vector<Digits>> rref_representatives(std::size_t n_coords, std::size_t d, std::uint32_t q)
{
    std::vector<std::vector<Digits>> out;
    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) piv[i] = i;
    if (d > n_coords) return out;
    while (true) {
        // free slots: (row i, column c) with c > piv[i], c not a pivot
        std::vector<bool> is_piv(n_coords, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t c = piv[i] + 1; c < n_coords; ++c)
                if (!is_piv[c]) slots.emplace_back(i, c);
        std::vector<std::uint8_t> vals(slots.size(), 0);
        while (true) {
            std::vector<Digits> rows(d, Digits(n_coords, 0));
            for (std::size_t i = 0; i < d; ++i) rows[i][piv[i]] = 1;
            for (std::size_t k = 0; k < slots.size(); ++k) rows[slots[k].first][slots[k].second] = vals[k];
            out.push_back(std::move(rows));
            std::size_t k = slots.size();
            while (k > 0) {
                if (++vals[k - 1] < q) break;
                vals[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
        if (d == 0) break;
        std::size_t k = d;
        while (k > 0 && piv[k - 1] == n_coords - d + k - 1) --k;
        if (k == 0) break;
        ++piv[k - 1];
        for (std::size_t j = k; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// Gaussian binomial [n choose d]_q.
inline std::uint64_t gaussian_binomial(std::size_t n, std::size_t d, std::uint64_t q)
{
    if (d > n) return 0;
    // product formula evaluated with exact integer division at each step
    mpz_class num = 1, den = 1;
    for (std::size_t i = 0; i < d; ++i) {
        num *= mpz_class(ipow(q, n - i)) - 1;
        den *= mpz_class(ipow(q, i + 1)) - 1;
    }
    mpz_class r = num / den;
    return r.get_ui();
}

} // namespace detail

/// Coordinates of A_n: entries (i, j) with i < j, row-major.
inline Matrix<PrimeField> alternating_from_coordinates(const PrimeField& f, std::size_t n,
                                                       const std::vector<std::uint8_t>& digits)
{
    Matrix<PrimeField> m(f, n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            m(i, j) = digits[k];
            m(j, i) = f.neg(digits[k]);
        }
    return m;
}

/// Exact maximum dimension of an affine subspace of A_n(F_q) every member of
/// which has rank r (constant_rank) or rank >= r (rank_at_least).
inline OptimalSearchResult exhaustive_optimal_dimension(std::size_t n, std::size_t r, const PrimeField& f,
                                                        RankPredicate predicate, OptimalSearchOptions opts = {})
{
    if (n > 5) throw precondition_error("exhaustive_optimal_dimension: n must be at most 5");
    const std::uint32_t q = f.characteristic();
    const std::size_t coords = n * (n - 1) / 2;
    const std::uint64_t ambient = detail::ipow(q, coords);
    if (ambient > 10'000'000) throw budget_exceeded("exhaustive_optimal_dimension: ambient space too large");

    // rank table indexed by code = sum digit_k q^k
    std::vector<std::uint8_t> ok(ambient, 0);
    for (std::uint64_t code = 0; code < ambient; ++code) {
        detail::Digits dg(coords);
        std::uint64_t c = code;
        for (std::size_t k = 0; k < coords; ++k) {
            dg[k] = static_cast<std::uint8_t>(c % q);
            c /= q;
        }
        const auto rk = rank(AlternatingMatrix<PrimeField>(alternating_from_coordinates(f, n, dg)));
        ok[code] = predicate == RankPredicate::constant_rank ? rk == r : rk >= r;
    }

    std::vector<std::uint64_t> place(coords);
    for (std::size_t k = 0; k < coords; ++k) place[k] = detail::ipow(q, k);

    OptimalSearchResult result;
    std::uint64_t spent = 0;
    for (std::size_t d = 0; d <= coords; ++d) {
        const std::uint64_t n_sub = detail::gaussian_binomial(coords, d, q);
        const std::uint64_t cost = n_sub * ambient; // pairs (q^{N-d}) times members (q^d)
        if (spent + cost > opts.work_budget)
            throw budget_exceeded("exhaustive_optimal_dimension: dimension " + std::to_string(d) +
                                  " search exceeds the work budget");
        spent += cost;

        const auto reps = detail::rref_representatives(coords, d, q);
        const std::uint64_t span_size = detail::ipow(q, d);
        const std::uint64_t coset_count = detail::ipow(q, coords - d);

        struct ChunkOut {
            std::optional<std::pair<std::size_t, std::uint64_t>> hit; // (subspace, coset)
            std::uint64_t examined = 0;
        };
        auto chunks = map_chunks(reps.size(), [&](IndexRange range) {
            ChunkOut out;
            std::vector<std::uint64_t> span_codes(span_size);
            std::vector<detail::Digits> span(span_size, detail::Digits(coords, 0));
            for (std::uint64_t si = range.begin; si < range.end; ++si) {
                const auto& rows = reps[si];
                std::vector<bool> is_piv(coords, false);
                for (const auto& row : rows)
                    for (std::size_t c = 0; c < coords; ++c)
                        if (row[c] != 0) {
                            is_piv[c] = true;
                            break;
                        }
                for (std::uint64_t t = 0; t < span_size; ++t) {
                    auto& v = span[t];
                    std::fill(v.begin(), v.end(), 0);
                    std::uint64_t c = t;
                    for (std::size_t i = 0; i < d; ++i) {
                        const auto coef = static_cast<std::uint32_t>(c % q);
                        c /= q;
                        if (coef == 0) continue;
                        for (std::size_t k = 0; k < coords; ++k) v[k] = static_cast<std::uint8_t>((v[k] + coef * rows[i][k]) % q);
                    }
                }
                std::vector<std::size_t> free_cols;
                for (std::size_t c = 0; c < coords; ++c)
                    if (!is_piv[c]) free_cols.push_back(c);
                detail::Digits rep(coords, 0);
                for (std::uint64_t ci = 0; ci < coset_count; ++ci) {
                    std::uint64_t c = ci;
                    for (auto col : free_cols) {
                        rep[col] = static_cast<std::uint8_t>(c % q);
                        c /= q;
                    }
                    ++out.examined;
                    bool all = true;
                    for (std::uint64_t t = 0; t < span_size && all; ++t) {
                        std::uint64_t code = 0;
                        for (std::size_t k = 0; k < coords; ++k) code += ((rep[k] + span[t][k]) % q) * place[k];
                        all = ok[code] != 0;
                    }
                    if (all) {
                        out.hit = std::make_pair(static_cast<std::size_t>(si), ci);
                        return out;
                    }
                }
            }
            return out;
        });

        DimensionScan scan{d, n_sub, 0, false};
        std::optional<std::pair<std::size_t, std::uint64_t>> hit;
        for (const auto& c : chunks) {
            scan.affine_examined += c.examined;
            if (!hit && c.hit) hit = c.hit;
        }
        scan.found = hit.has_value();
        result.scans.push_back(scan);
        if (!hit) break;

        // materialize the witness
        const auto& rows = reps[hit->first];
        std::vector<bool> is_piv(coords, false);
        for (const auto& row : rows)
            for (std::size_t c = 0; c < coords; ++c)
                if (row[c] != 0) {
                    is_piv[c] = true;
                    break;
                }
        detail::Digits rep(coords, 0);
        std::uint64_t c = hit->second;
        for (std::size_t col = 0; col < coords; ++col)
            if (!is_piv[col]) {
                rep[col] = static_cast<std::uint8_t>(c % q);
                c /= q;
            }
        std::vector<Matrix<PrimeField>> basis;
        for (const auto& row : rows) basis.push_back(alternating_from_coordinates(f, n, row));
        result.max_dimension = static_cast<int>(d);
        result.witness.emplace(alternating_from_coordinates(f, n, rep), std::move(basis), true);
    }
    return result;
}

} // namespace altrank

#endif // ALTRANK_OPTIMAL_SEARCH_HPP
