#include <gtest/gtest.h>

#include "altrank/field.hpp"
#include "altrank/space.hpp"

using namespace altrank;

TEST(PrimeField, RejectsNonPrimeModuli)
{
    EXPECT_THROW(PrimeField(1), precondition_error);
    EXPECT_THROW(PrimeField(4), precondition_error);
    EXPECT_THROW(PrimeField(2147483659u), precondition_error); // prime, but >= 2^31
    EXPECT_NO_THROW(PrimeField(2147483647u));
}

TEST(PrimeField, InverseExamples)
{
    EXPECT_EQ(field_inv(PrimeField(5), 2u), 3u);
    EXPECT_THROW(field_inv(PrimeField(7), 0u), division_by_zero);
    const RationalField q;
    EXPECT_EQ(field_inv(q, q.parse("3/4")), mpq_class(4, 3));
    EXPECT_THROW(field_inv(q, q.zero()), division_by_zero);
}

TEST(PrimeField, InverseOfEveryUnit)
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u, 65521u}) {
        const PrimeField f(p);
        for (std::uint32_t x = 1; x < std::min(p, 2000u); ++x) EXPECT_EQ(f.mul(x, f.inv(x)), 1u) << p << " " << x;
    }
}

TEST(PrimeField, MatchesWideIntegerArithmetic)
{
    const std::uint32_t p = 2147483647u;
    const PrimeField f(p);
    ScalarSampler<PrimeField> rng(f, 11);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t a = rng(), b = rng();
        EXPECT_EQ(f.add(a, b), (a + b) % p);
        EXPECT_EQ(f.sub(a, b), (a + p - b) % p);
        EXPECT_EQ(f.mul(a, b), static_cast<std::uint32_t>((static_cast<unsigned __int128>(a) * b) % p));
    }
}

template <class F>
void field_axioms(const F& f, std::uint64_t seed)
{
    ScalarSampler<F> rng(f, seed);
    for (int i = 0; i < 10000; ++i) {
        const auto a = rng(), b = rng(), c = rng();
        ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
        if (!f.is_zero(a)) ASSERT_TRUE(f.is_one(f.mul(a, f.inv(a))));
    }
}

TEST(FieldAxioms, RandomTriples)
{
    field_axioms(PrimeField(3), 1);
    field_axioms(PrimeField(7), 2);
    field_axioms(PrimeField(1000003), 3);
    field_axioms(RationalField(), 4);
}

TEST(FieldText, ParseAndPrint)
{
    const PrimeField f(5);
    EXPECT_EQ(f.parse("-1"), 4u);
    EXPECT_EQ(f.parse("12"), 2u);
    EXPECT_EQ(f.parse("3/4"), 2u); // 3 * 4^{-1} = 3 * 4
    EXPECT_THROW(f.parse("x"), precondition_error);
    const RationalField q;
    EXPECT_EQ(q.to_string(q.parse("6/8")), "3/4");
    EXPECT_EQ(q.to_string(q.parse("-10/5")), "-2");
    EXPECT_THROW(q.parse("1/0"), precondition_error);
}

TEST(FieldCtx, ParseNames)
{
    EXPECT_EQ(field_name(parse_field("Q")), "Q");
    EXPECT_EQ(field_name(parse_field("Fp:7")), "Fp:7");
    EXPECT_THROW(parse_field("Fp:x"), precondition_error);
    EXPECT_THROW(parse_field("Fp:9"), precondition_error);
    EXPECT_THROW(parse_field("GF(4)"), precondition_error);
}

TEST(FieldCtx, CardinalityGate)
{
    EXPECT_TRUE(cardinality_at_least(parse_field("Fp:5"), 4));
    EXPECT_FALSE(cardinality_at_least(parse_field("Fp:3"), 4));
    EXPECT_TRUE(cardinality_at_least(parse_field("Q"), 1000000000));
}
