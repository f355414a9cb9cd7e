#include "helpers.hpp"

#include "wallcross/fm.hpp"
#include "wallcross/linalg.hpp"

#include <doctest.h>

using namespace wallcross;

TEST_CASE("rational parsing and fractional parts")
{
    CHECK(parse_q("3/6") == Q(1, 2));
    CHECK(parse_q("-4") == Q(-4));
    CHECK_THROWS_AS(parse_q("1/0"), Error);
    CHECK_THROWS_AS(parse_q("x"), Error);
    CHECK(frac(Q(-1, 3)) == Q(2, 3));
    CHECK(floor_q(Q(-1, 3)) == -1);
    CHECK(floor_q(Q(7, 2)) == 3);
    CHECK(to_string(Q(-6, 4)) == "-3/2");
}

TEST_CASE("rank, nullspace and inverse")
{
    QMat a{qv({1, 2, 3}), qv({2, 4, 6}), qv({1, 0, 1})};
    CHECK(rank(a) == 2);
    QMat ns = nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(mat_vec(a, ns[0])));
    QMat b{qv({2, 1}), qv({1, 1})};
    QMat bi = inverse(b);
    CHECK(mat_mul(b, bi) == QMat{qv({1, 0}), qv({0, 1})});
    CHECK_THROWS_AS(inverse(a), Error);
}

TEST_CASE("Smith normal form of a small matrix")
{
    std::vector<std::vector<Z>> a{{2, 4}, {6, 8}};
    auto s = smith_normal_form(a);
    REQUIRE(s.diagonal.size() == 2);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 4);
}

TEST_CASE("cone membership by elimination")
{
    std::vector<QVec> gens{qv({1, 0}), qv({0, 1})};
    CHECK(in_cone(gens, qv({1, 1}), true));
    CHECK_FALSE(in_cone(gens, qv({1, 0}), true));
    CHECK(in_cone(gens, qv({1, 0}), false));
    CHECK_FALSE(in_cone(gens, qv({-1, 1}), false));
}
