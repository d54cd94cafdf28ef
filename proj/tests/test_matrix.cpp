#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace altrank;

namespace {

Matrix<PrimeField> ints(std::uint32_t p, std::size_t r, std::size_t c, std::vector<std::int64_t> v)
{
    return oracle::flat(PrimeField(p), r, c, v);
}

} // namespace

TEST(Rank, Examples)
{
    const PrimeField f5(5);
    EXPECT_EQ(rank(Matrix<PrimeField>(f5, 3, 3)), 0u);
    EXPECT_EQ(rank(AlternatingMatrix<PrimeField>::standard_symplectic(f5, 2)), 4u);
    // s = 1, A = 0, B = [1], C = 0 in A_5
    Matrix<PrimeField> m(f5, 5, 5);
    m(0, 1) = 1;
    m(1, 0) = 4;
    EXPECT_EQ(rank(AlternatingMatrix<PrimeField>(m)), 2u);
}

TEST(Rank, AgreesWithMinorOracle)
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const PrimeField f(p);
        ScalarSampler<PrimeField> rng(f, p);
        for (int i = 0; i < 300; ++i) {
            const std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
            auto m = oracle::random_matrix(f, r, c, rng);
            // thin out entries so low ranks show up
            for (auto& x : m.entries())
                if (rng.below(3) == 0) x = 0;
            ASSERT_EQ(rank(m), oracle::rank(m));
        }
    }
}

TEST(Determinant, AgreesWithLeibniz)
{
    const PrimeField f(7);
    ScalarSampler<PrimeField> rng(f, 5);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int i = 0; i < 50; ++i) {
            const auto m = oracle::random_matrix(f, n, n, rng);
            ASSERT_EQ(det(m), oracle::det(m));
        }
    const RationalField q;
    ScalarSampler<RationalField> rq(q, 6);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto m = oracle::random_matrix(q, n, n, rq);
        ASSERT_EQ(det(m), oracle::det(m));
    }
}

TEST(Kernel, Examples)
{
    const PrimeField f3(3);
    EXPECT_TRUE(kernel_basis(Matrix<PrimeField>::identity(f3, 3)).empty());
    const auto k2 = direct_sum(AlternatingMatrix<PrimeField>::standard_symplectic(f3, 1).matrix(), Matrix<PrimeField>(f3, 2, 2));
    const auto ker = kernel_basis(k2);
    ASSERT_EQ(ker.size(), 2u);
    EXPECT_EQ(ker[0], unit_vector(f3, 4, 2));
    EXPECT_EQ(ker[1], unit_vector(f3, 4, 3));
    const RationalField q;
    const auto a = oracle::flat(q, 4, 4, {0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0});
    EXPECT_TRUE(kernel_basis(a).empty());
}

TEST(Kernel, VectorsAreIndependentSolutions)
{
    const PrimeField f(5);
    ScalarSampler<PrimeField> rng(f, 8);
    for (int i = 0; i < 200; ++i) {
        auto m = oracle::random_matrix(f, 1 + rng.below(5), 1 + rng.below(6), rng);
        for (auto& x : m.entries())
            if (rng.below(2)) x = 0;
        const auto ker = kernel_basis(m);
        ASSERT_EQ(ker.size(), m.cols() - rank(m));
        ASSERT_EQ(vectors_rank(f, m.cols(), ker), ker.size());
        for (const auto& v : ker) ASSERT_TRUE(is_zero_vector(f, m.apply(v)));
    }
}

TEST(Solve, ConsistentAndInconsistent)
{
    const auto m = ints(7, 2, 3, {1, 2, 3, 2, 4, 6});
    auto x = solve(m, Vector<PrimeField>{1, 2});
    ASSERT_TRUE(x);
    EXPECT_EQ(m.apply(*x), (Vector<PrimeField>{1, 2}));
    EXPECT_EQ(*x, (Vector<PrimeField>{1, 0, 0})); // free variables zero
    EXPECT_FALSE(solve(m, Vector<PrimeField>{1, 3}));
}

TEST(Inverse, RoundTrip)
{
    const PrimeField f(7);
    ScalarSampler<PrimeField> rng(f, 9);
    for (int i = 0; i < 100; ++i) {
        const auto m = random_invertible(f, 1 + rng.below(6), rng);
        EXPECT_EQ(m * inverse(m), Matrix<PrimeField>::identity(f, m.rows()));
    }
    EXPECT_THROW(inverse(Matrix<PrimeField>(f, 2, 2)), precondition_error);
}

TEST(Alternating, CharacteristicTwoCondition)
{
    // [0 1; 1 0] is alternating over F_2; [1 0; 0 0] is skew-symmetric there but not alternating
    EXPECT_TRUE(is_alternating(ints(2, 2, 2, {0, 1, 1, 0})));
    EXPECT_FALSE(is_alternating(ints(2, 2, 2, {1, 0, 0, 0})));
    EXPECT_THROW(AlternatingMatrix<PrimeField>(ints(5, 2, 2, {0, 1, 1, 0})), precondition_error);
}

TEST(Alternating, QuadraticFormVanishes)
{
    const PrimeField f(5);
    ScalarSampler<PrimeField> rng(f, 10);
    for (int i = 0; i < 100; ++i) {
        const auto a = oracle::random_alternating(f, 5, rng);
        Vector<PrimeField> x(5);
        for (auto& v : x) v = rng();
        EXPECT_EQ(bilinear(a, x, x), 0u);
    }
}

TEST(PrincipalSubmatrix, Examples)
{
    const PrimeField f(5);
    const auto k2 = AlternatingMatrix<PrimeField>::standard_symplectic(f, 1).matrix();
    const Matrix<PrimeField> z2(f, 2, 2);
    EXPECT_EQ(invertible_principal_submatrix(AlternatingMatrix<PrimeField>(direct_sum(k2, z2))),
              (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(invertible_principal_submatrix(AlternatingMatrix<PrimeField>(Matrix<PrimeField>(f, 4, 4))).empty());
    EXPECT_EQ(invertible_principal_submatrix(AlternatingMatrix<PrimeField>(direct_sum(z2, k2))),
              (std::vector<std::size_t>{2, 3}));
}

TEST(PrincipalSubmatrix, SizeEqualsRankAndInvertible)
{
    const PrimeField f(3);
    ScalarSampler<PrimeField> rng(f, 12);
    for (int i = 0; i < 200; ++i) {
        // P^T A P with P of size k x 6 has rank at most k
        const std::size_t k = rng.below(7);
        const auto inner = oracle::random_alternating(f, k, rng);
        const auto p = oracle::random_matrix(f, k, 6, rng);
        const auto a = p.transpose() * inner * p;
        const AlternatingMatrix<PrimeField> alt(a);
        const auto idx = invertible_principal_submatrix(alt);
        ASSERT_EQ(idx.size(), rank(alt));
        ASSERT_TRUE(is_invertible(principal_submatrix(a, idx)) || idx.empty());
    }
}

TEST(CharacteristicPolynomial, MatchesDeterminantScan)
{
    for (std::uint32_t p : {2u, 3u, 7u}) {
        const PrimeField f(p);
        ScalarSampler<PrimeField> rng(f, p + 100);
        for (std::size_t n = 1; n <= 5; ++n)
            for (int i = 0; i < 20; ++i) {
                const auto m = oracle::random_matrix(f, n, n, rng);
                const auto chi = characteristic_polynomial(m);
                ASSERT_EQ(chi.size(), n + 1);
                for (std::uint32_t l = 0; l < p; ++l) {
                    auto shifted = Matrix<PrimeField>::identity(f, n).scaled(l);
                    shifted -= m;
                    ASSERT_EQ(evaluate_polynomial(f, chi, l), oracle::det(shifted));
                }
            }
    }
    const RationalField q;
    ScalarSampler<RationalField> rq(q, 3);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto m = oracle::random_matrix(q, n, n, rq);
        const auto chi = characteristic_polynomial(m);
        for (int l = -3; l <= 3; ++l) {
            auto shifted = Matrix<RationalField>::identity(q, n).scaled(mpq_class(l));
            shifted -= m;
            ASSERT_EQ(evaluate_polynomial(q, chi, mpq_class(l)), oracle::det(shifted));
        }
    }
}

TEST(Eigenvalues, Examples)
{
    const PrimeField f5(5);
    Matrix<PrimeField> nt(f5, 3, 3);
    nt(0, 1) = 1;
    nt(0, 2) = 3;
    nt(1, 2) = 2;
    EXPECT_EQ(eigenvalues_in_field(nt), (std::vector<std::uint32_t>{0}));
    EXPECT_TRUE(eigenvalues_in_field(ints(3, 2, 2, {0, 1, -1, 0})).empty());
    EXPECT_EQ(eigenvalues_in_field(ints(5, 2, 2, {0, 1, -1, 0})), (std::vector<std::uint32_t>{2, 3}));
}

TEST(Eigenvalues, RationalRootScan)
{
    const RationalField q;
    const auto m = oracle::flat(q, 3, 3, {2, 1, 0, 0, -3, 5, 0, 0, 7});
    EXPECT_EQ(eigenvalues_in_field(m), (std::vector<mpq_class>{-3, 2, 7}));
    auto half = Matrix<RationalField>::identity(q, 2).scaled(mpq_class(1, 2));
    EXPECT_EQ(eigenvalues_in_field(half), (std::vector<mpq_class>{mpq_class(1, 2)}));
    // x^2 - 2 has no rational root
    EXPECT_TRUE(eigenvalues_in_field(oracle::flat(q, 2, 2, {0, 2, 1, 0})).empty());
}

TEST(Span, CompleteWithStandardBasis)
{
    const PrimeField f(3);
    const std::vector<Vector<PrimeField>> fam{{1, 1, 0}, {0, 1, 1}};
    const auto added = complete_with_standard_basis(f, 3, fam);
    ASSERT_EQ(added.size(), 1u);
    auto all = fam;
    all.push_back(added[0]);
    EXPECT_EQ(vectors_rank(f, 3, all), 3u);
}
