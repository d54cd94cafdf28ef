#include <gtest/gtest.h>

#include "altrank/json_io.hpp"
#include "oracles.hpp"

using namespace altrank;

TEST(JsonIo, ScalarSpellings)
{
    const PrimeField f(7);
    EXPECT_EQ(scalar_from_json(f, Json(10)), 3u);
    EXPECT_EQ(scalar_from_json(f, Json("-1")), 6u);
    EXPECT_EQ(scalar_to_json(f, 5u), Json(5));
    const RationalField q;
    EXPECT_EQ(scalar_from_json(q, Json("-3/4")), mpq_class(-3, 4));
    EXPECT_EQ(scalar_from_json(q, Json(2)), mpq_class(2));
    EXPECT_EQ(scalar_to_json(q, q.parse("6/4")), Json("3/2"));
    EXPECT_THROW(scalar_from_json(q, Json(1.5)), precondition_error);
}

TEST(JsonIo, MatrixRoundTrip)
{
    const PrimeField f(11);
    ScalarSampler<PrimeField> rng(f, 1);
    const auto m = oracle::random_matrix(f, 3, 4, rng);
    const auto j = matrix_to_json(m);
    EXPECT_EQ(j["field"], "Fp:11");
    EXPECT_EQ(matrix_from_json(f, Json::parse(j.dump())), m);

    const RationalField q;
    ScalarSampler<RationalField> rq(q, 2);
    auto mq = oracle::random_matrix(q, 2, 2, rq);
    mq(0, 1) = mpq_class(-7, 3);
    EXPECT_EQ(matrix_from_json(q, Json::parse(matrix_to_json(mq).dump())), mq);
}

TEST(JsonIo, MatrixShapeErrors)
{
    const PrimeField f(5);
    EXPECT_THROW(matrix_from_data(f, Json::parse("[[1,2],[3]]"), 2, 2), precondition_error);
    EXPECT_THROW(matrix_from_data(f, Json::parse("[[1,2]]"), 2, 2), precondition_error);
}

TEST(JsonIo, SpaceRoundTrip)
{
    const PrimeField f(5);
    const auto sp = build_m_tilde_alt(7, 2, f);
    const auto j = space_to_json(sp);
    EXPECT_EQ(j["shape"], Json::parse("[7,7]"));
    EXPECT_TRUE(j["alternating"].get<bool>());
    const auto back = space_from_json(f, Json::parse(j.dump()));
    EXPECT_EQ(back.base(), sp.base());
    EXPECT_EQ(back.basis(), sp.basis());

    const RationalField q;
    const auto plane = build_counterexample_plane(q);
    EXPECT_TRUE(same_set(space_from_json(q, space_to_json(plane)), plane));
}

TEST(JsonIo, PairRoundTrip)
{
    const PrimeField f(3);
    const auto pair = build_operator_block(3, build_nt(3, f));
    const auto back = pair_from_json(f, Json::parse(pair_to_json(pair).dump()));
    EXPECT_EQ(back.gram().matrix(), pair.gram().matrix());
    EXPECT_EQ(back.operators(), pair.operators());
}

TEST(JsonIo, CertificateFields)
{
    const PrimeField f(5);
    const auto sp = build_m_tilde_alt(7, 2, f);
    const auto cert = reduce(sp, 4);
    const auto j = certificate_to_json(cert, f);
    EXPECT_TRUE(j["all_verdicts"].get<bool>());
    EXPECT_EQ(j["verdicts"].size(), 8u);
    const auto p = matrix_from_json(f, j["P"]);
    const auto m = space_from_json(f, j["recovered_M"]);
    EXPECT_TRUE(same_set(congruence_act(sp, p), build_m_tilde_alt(7, 2, m)));
    EXPECT_EQ(j["lagrangian"].size(), 2u);
}

TEST(JsonIo, ProfileFields)
{
    const PrimeField f(3);
    const auto ex = profile_to_json(rank_profile(build_m_tilde_alt(5, 1, f)), f);
    EXPECT_EQ(ex["method"], "exhaustive");
    EXPECT_EQ(ex["enumerated"], 27);
    EXPECT_EQ(ex["constancy"], "proven");
    const auto sm = profile_to_json(sampled_rank_profile(build_m_tilde_alt(5, 1, f), 10, 4), f);
    EXPECT_EQ(sm["samples"], 10);
    EXPECT_EQ(sm["seed"], 4);
    EXPECT_EQ(sm["constancy"], "not falsified");
}
