#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace altrank;

namespace {

using Sp = AffineMatrixSpace<PrimeField>;

void expect_constant_rank(const Sp& sp, std::size_t r)
{
    for (const auto& m : oracle::all_members(sp)) ASSERT_EQ(rank(m), r);
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

} // namespace

TEST(NT, Dimensions)
{
    const PrimeField f(5);
    EXPECT_EQ(build_nt(1, f).dimension(), 0u);
    EXPECT_EQ(build_nt(3, f).dimension(), 3u);
    EXPECT_EQ(build_nt(4, f).dimension(), 6u);
    EXPECT_TRUE(trivial_spectrum_check(build_nt(3, f)).trivial);
    EXPECT_THROW(build_nt(0, f), precondition_error);
    for (const auto& m : oracle::all_members(build_nt(3, f))) {
        const auto cube = m * m * m;
        ASSERT_TRUE(cube.is_zero());
    }
}

TEST(NonsingularAlt, Examples)
{
    const PrimeField f(5);
    const auto one = build_nonsingular_alt(1, f);
    EXPECT_EQ(one.dimension(), 0u);
    EXPECT_EQ(one.base(), oracle::flat(f, 2, 2, {0, 1, -1, 0}));

    const auto two = build_nonsingular_alt(2, f);
    EXPECT_EQ(two.dimension(), 2u);
    const auto members = oracle::all_members(two);
    ASSERT_EQ(members.size(), 25u);
    for (const auto& m : members) EXPECT_EQ(oracle::rank(m), 4u);

    const auto three = build_nonsingular_alt(3, PrimeField(3));
    EXPECT_EQ(three.dimension(), 6u);
    expect_constant_rank(three, 6);
}

TEST(MTildeAlt, Examples)
{
    const PrimeField f3(3);
    const auto sp = build_m_tilde_alt(7, 2, f3);
    EXPECT_EQ(sp.dimension(), 8u);
    expect_constant_rank(sp, 4);
    EXPECT_EQ(build_m_tilde_alt(4, 2, f3).dimension(), 2u);
    const auto small = build_m_tilde_alt(5, 1, f3);
    EXPECT_EQ(small.dimension(), 3u);
    expect_constant_rank(small, 2);
}

TEST(MTildeAlt, DimensionFormulaAcrossSizes)
{
    const PrimeField f(5);
    for (std::size_t s = 1; s <= 3; ++s)
        for (std::size_t n = 2 * s; n <= 2 * s + 3; ++n)
            EXPECT_EQ(build_m_tilde_alt(n, s, f).dimension(), s * (n - s - 1)) << n << " " << s;
}

TEST(MTildeAlt, RejectsBadInner)
{
    const PrimeField f(5);
    // right dimension, but containing the singular member [[1, t], [0, 0]] + ...
    const Sp singular(oracle::flat(f, 2, 2, {1, 0, 0, 0}), {unit_matrix(f, 2, 2, 0, 1)}, false);
    EXPECT_THROW(build_m_tilde_alt(6, 2, singular), precondition_error);
    EXPECT_THROW(build_m_tilde_alt(6, 2, build_nt(2, f)), precondition_error);
    EXPECT_THROW(build_m_tilde_alt(6, 2, Sp::point(Matrix<PrimeField>::identity(f, 2), false)), precondition_error);
    EXPECT_THROW(build_m_tilde_alt(3, 2, f), precondition_error);
}

TEST(MTildeAlt, PlantedInnerFamily)
{
    const PrimeField f(7);
    // {[1 t; 0 2]}: invertible for every t
    const Sp inner(oracle::flat(f, 2, 2, {1, 0, 0, 2}), {unit_matrix(f, 2, 2, 0, 1)}, false);
    const auto sp = build_m_tilde_alt(6, 2, inner);
    EXPECT_EQ(sp.dimension(), 6u);
    const auto p = rank_profile(sp);
    EXPECT_TRUE(p.constant_proven());
    EXPECT_EQ(p.min_rank, 4u);
}

TEST(MTildeRect, ShapeAndRank)
{
    const PrimeField f(5);
    const auto sp = build_m_tilde_rect(5, build_identity_plus_nt(2, f));
    EXPECT_EQ(sp.rows(), 2u);
    EXPECT_EQ(sp.cols(), 5u);
    EXPECT_EQ(sp.dimension(), 1u + 6u);
    const auto p = rank_profile(sp);
    EXPECT_EQ(p.min_rank, 2u);
    EXPECT_EQ(p.max_rank, 2u);
}

TEST(HPlus, Examples)
{
    const PrimeField f5(5), f3(3);
    const auto h2 = build_h_plus(2, f5);
    EXPECT_EQ(h2.rows(), 3u);
    EXPECT_EQ(h2.dimension(), 2u);
    expect_constant_rank(h2, 2);

    const auto h4 = build_h_plus(4, f3);
    EXPECT_EQ(h4.dimension(), 6u);
    expect_constant_rank(h4, 4);
    EXPECT_EQ(oracle::rank(h4.base()), 4u);
    EXPECT_EQ(h4.dimension(), maximal_dimension(5, 4, DimensionProblem::constant_rank));
}

TEST(HBar, Examples)
{
    const PrimeField f5(5), f3(3);
    const auto h = build_h_bar(5, 4, f5);
    EXPECT_EQ(h.dimension(), 6u);
    const auto p = rank_profile(h);
    EXPECT_EQ(p.method, ProfileMethod::exhaustive);
    EXPECT_GE(p.min_rank, 4u);

    for (std::size_t s = 1; s <= 3; ++s) EXPECT_EQ(build_h_bar(2 * s, 2 * s, f3).dimension(), s * (s - 1));

    const auto wide = build_h_bar(6, 2, f3);
    EXPECT_EQ(wide.dimension(), choose2(6) - 1);
    const auto sp = rank_profile(wide, 1000, 1, 100000);
    EXPECT_EQ(sp.method, ProfileMethod::sampled);
    EXPECT_GE(sp.min_rank, 2u);
    EXPECT_THROW(build_h_bar(3, 4, f3), precondition_error);
    EXPECT_THROW(build_h_bar(5, 3, f3), precondition_error);
}

TEST(OperatorBlock, Examples)
{
    const PrimeField f5(5), f3(3);
    auto pair = build_operator_block(2, build_nt(2, f5));
    EXPECT_EQ(pair.dimension(), 2u);
    EXPECT_EQ(build_operator_block(1, build_nt(1, f5)).dimension(), 0u);

    pair = build_operator_block(3, build_nt(3, f3));
    EXPECT_EQ(pair.dimension(), 6u);
    const auto spec = trivial_spectrum_check(pair.operator_space());
    EXPECT_TRUE(spec.trivial);
    for (const auto& m : pair.operators()) EXPECT_TRUE(is_alternating(pair.gram().matrix() * m));

    const Sp with_identity(Matrix<PrimeField>(f5, 2, 2), {Matrix<PrimeField>::identity(f5, 2)}, false);
    EXPECT_THROW(build_operator_block(2, with_identity), precondition_error);
}

TEST(OperatorBlock, PullbackIsSymplecticFamily)
{
    for (std::uint32_t q : {3u, 5u}) {
        const PrimeField f(q);
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto forms = phi_operators_to_forms(build_operator_block(n, build_nt(n, f)));
            EXPECT_EQ(forms.dimension(), n * (n - 1));
            const auto p = rank_profile(forms);
            EXPECT_TRUE(p.constant_proven());
            EXPECT_EQ(p.min_rank, 2 * n);
        }
    }
}

TEST(OperatorBlock, RationalSpotCheck)
{
    const RationalField q;
    const auto pair = build_operator_block(2, build_nt(2, q));
    EXPECT_EQ(pair.dimension(), 2u);
    const AffineMatrixSpace<RationalField> bad(Matrix<RationalField>(q, 2, 2), {Matrix<RationalField>::identity(q, 2)}, false);
    EXPECT_THROW(build_operator_block(2, bad), precondition_error);
}

TEST(CounterexamplePlane, PfaffianIsSumOfSquares)
{
    const RationalField q;
    ScalarSampler<RationalField> rng(q, 31);
    for (int i = 0; i < 200; ++i) {
        const mpq_class x = rng(), y = rng(), z = rng() / mpq_class(7);
        const auto a = counterexample_matrix(q, x, y, z);
        ASSERT_EQ(oracle::pfaffian(a), x * x + y * y + z * z);
    }
}

TEST(CounterexamplePlane, Examples)
{
    const RationalField q;
    const auto plane = build_counterexample_plane(q);
    EXPECT_EQ(plane.dimension(), 2u);
    const auto p = sampled_rank_profile(plane, 10000, 0);
    EXPECT_EQ(p.min_rank, 4u);
    EXPECT_EQ(p.max_rank, 4u);

    const PrimeField f3(3);
    const auto a111 = counterexample_matrix(f3, 1u, 1u, 1u);
    EXPECT_EQ(oracle::pfaffian(a111), 0u);
    EXPECT_LT(oracle::rank(a111), 4u);
    EXPECT_TRUE(build_counterexample_plane(f3).contains(a111));

    const auto a100 = counterexample_matrix(q, mpq_class(1), mpq_class(0), mpq_class(0));
    EXPECT_EQ(oracle::pfaffian(a100), 1);
    EXPECT_EQ(rank(a100), 4u);
}

TEST(CounterexamplePlane, Certificate)
{
    const auto cq = certify_plane_anisotropy(RationalField());
    EXPECT_EQ(cq.translation_form, (std::vector<mpq_class>{1, 0, 1}));
    EXPECT_TRUE(cq.full_form_is_sum_of_squares);
    EXPECT_TRUE(cq.positive_diagonal);
    EXPECT_TRUE(cq.anisotropic);

    const PrimeField f5(5), f3(3);
    EXPECT_FALSE(certify_plane_anisotropy(f5).anisotropic);
    const auto w5 = find_singular_plane_point(f5, {0});
    ASSERT_TRUE(w5);
    EXPECT_EQ(*w5, (std::array<std::uint32_t, 3>{1, 2, 0}));
    EXPECT_EQ(rank(counterexample_matrix(f5, 1u, 2u, 0u)), 2u);

    EXPECT_TRUE(certify_plane_anisotropy(f3).anisotropic);
    EXPECT_FALSE(find_singular_plane_point(f3, {0}));
    const auto w3 = find_singular_plane_point(f3, {1});
    ASSERT_TRUE(w3);
    EXPECT_EQ(*w3, (std::array<std::uint32_t, 3>{1, 1, 1}));
}

TEST(PfaffianQuadraticForm, MatchesDirectEvaluation)
{
    const PrimeField f(7);
    ScalarSampler<PrimeField> rng(f, 12);
    std::vector<Matrix<PrimeField>> mats;
    for (int i = 0; i < 3; ++i) mats.push_back(oracle::random_alternating(f, 4, rng));
    const auto c = pfaffian_quadratic_form(mats);
    ASSERT_EQ(c.size(), 6u);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t x = rng(), y = rng(), z = rng();
        Matrix<PrimeField> m = mats[0].scaled(x);
        m.add_scaled(y, mats[1]);
        m.add_scaled(z, mats[2]);
        const std::uint32_t terms[6] = {f.mul(x, x), f.mul(x, y), f.mul(x, z), f.mul(y, y), f.mul(y, z), f.mul(z, z)};
        std::uint32_t v = 0;
        for (int k = 0; k < 6; ++k) v = f.add(v, f.mul(c[k], terms[k]));
        ASSERT_EQ(v, oracle::pfaffian(m));
    }
}

TEST(MaximalDimension, Examples)
{
    EXPECT_EQ(maximal_dimension(4, 4, DimensionProblem::symplectic), 2u);
    EXPECT_EQ(maximal_dimension(5, 4, DimensionProblem::rank_at_least), 6u);
    EXPECT_EQ(maximal_dimension(7, 4, DimensionProblem::constant_rank), 8u);
    EXPECT_EQ(maximal_dimension(5, 4, DimensionProblem::constant_rank), 6u);
    EXPECT_THROW(maximal_dimension(5, 4, DimensionProblem::symplectic), precondition_error);
    EXPECT_THROW(maximal_dimension(5, 3, DimensionProblem::constant_rank), precondition_error);
    EXPECT_THROW(maximal_dimension(3, 4, DimensionProblem::rank_at_least), precondition_error);
    EXPECT_EQ(parse_dimension_problem("rank-at-least"), DimensionProblem::rank_at_least);
    EXPECT_THROW(parse_dimension_problem("thm3"), precondition_error);
}

TEST(MaximalDimension, ExtremalFamiliesAttainFormula)
{
    const PrimeField f(5);
    for (std::size_t r = 2; r <= 6; r += 2)
        for (std::size_t n = r; n <= 9; ++n) {
            const auto h = build_extremal_family(n, r, DimensionProblem::rank_at_least, f);
            EXPECT_EQ(h.dimension(), maximal_dimension(n, r, DimensionProblem::rank_at_least));
            EXPECT_EQ(h.dimension(), choose2(n) - (r / 2) * (r / 2));
            if (n == r) {
                EXPECT_EQ(build_extremal_family(n, r, DimensionProblem::symplectic, f).dimension(),
                          maximal_dimension(n, r, DimensionProblem::symplectic));
            }
            const auto c = build_extremal_family(n, r, DimensionProblem::constant_rank, f);
            EXPECT_EQ(c.dimension(), maximal_dimension(n, r, DimensionProblem::constant_rank)) << n << " " << r;
        }
}
