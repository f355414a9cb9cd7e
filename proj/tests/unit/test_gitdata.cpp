#include "helpers.hpp"

#include "wallcross/gitdata.hpp"

#include <doctest.h>

using namespace wallcross;

namespace {

GitData f1_git() { return GitData{2, {qv({0, 1}), qv({-1, 1}), qv({1, 0}), qv({1, 0})}, {}}; }

std::vector<Subset> sets(std::initializer_list<std::initializer_list<int>> l)
{
    std::vector<Subset> out;
    for (auto& s : l) {
        std::vector<int> idx;
        for (int i : s) idx.push_back(i - 1);
        out.push_back(subset_of(idx));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("validation flags malformed data")
{
    CHECK(validate(f1_git()).valid);
    CHECK_FALSE(validate(GitData{2, {qv({1, 0}), qv({2, 0})}, {}}).valid);
    CHECK_FALSE(validate(GitData{1, {qv({0}), qv({1})}, {}}).valid);
    GitData frac{1, {QVec{Q(1, 2)}, qv({1})}, {}};
    CHECK_FALSE(validate(frac).valid);
    CHECK_THROWS_AS(anticones(f1_git(), qv({-1, -1})), Error);
}

TEST_CASE("anticones of the two chambers of F1 / P2")
{
    auto g = f1_git();
    CHECK(anticones(g, qv({1, 1})).minimal == sets({{1, 3}, {2, 3}, {1, 4}, {2, 4}}));
    CHECK(anticones(g, qv({-1, 2})).minimal == sets({{1, 2}, {2, 3}, {2, 4}}));
    CHECK(same_chamber(g, qv({1, 1}), qv({3, 1})));
    CHECK_FALSE(same_chamber(g, qv({1, 1}), qv({-1, 2})));
}

TEST_CASE("F1 / P2 wall is a discrepant ray removal")
{
    auto w = classify_wall(f1_git(), qv({1, 1}), qv({-1, 2}));
    CHECK(w.type == WallType::II_remove_ray);
    CHECK(w.crepancy == 1);
    CHECK(w.omega_zero == QVec{Q(0), Q(3, 2)});
    CHECK(dot(w.e, qv({1, 1})) > 0);
}

TEST_CASE("conifold wall is a crepant flop")
{
    GitData g{1, {qv({1}), qv({1}), qv({-1}), qv({-1})}, {}};
    auto w = classify_wall(g, qv({1}), qv({-1}));
    CHECK(w.type == WallType::I);
    CHECK(w.crepant());
}

TEST_CASE("characters 1 and -2 cross a type III wall")
{
    GitData g{1, {qv({1}), qv({-2})}, {}};
    auto w = classify_wall(g, qv({1}), qv({-1}));
    CHECK(w.type == WallType::III);
    CHECK(w.crepancy == -1);
}

TEST_CASE("same chamber and multi-wall segments are rejected")
{
    auto g = f1_git();
    CHECK_THROWS_AS(classify_wall(g, qv({1, 1}), qv({2, 1})), Error);
    GitData p{1, {qv({1}), qv({1})}, {}};
    CHECK_THROWS_AS(classify_wall(p, qv({0}), qv({1})), Error);
}

TEST_CASE("local model of the F1 / P2 wall is a flop")
{
    auto g = f1_git();
    auto w = classify_wall(g, qv({1, 1}), qv({-1, 2}));
    auto lm = local_model_git(g, w);
    CHECK(lm.induced.type == WallType::I);
    CHECK(lm.induced.crepancy == 0);
    CHECK(popcount(lm.induced.M_plus) == 2);
    CHECK(popcount(lm.induced.M_minus) == 2);
    CHECK(lm.predicted_walls);
}

TEST_CASE("projective bundle splits the wall into crepant then discrepant")
{
    auto g = f1_git();
    auto w = classify_wall(g, qv({1, 1}), qv({-1, 2}));
    auto pb = proj_bundle_git(g, w, Q(1, 100));
    REQUIRE(pb.crossings.size() == 2);
    CHECK(pb.crossings[0].type == WallType::I);
    CHECK(pb.crossings[0].crepant());
    CHECK(pb.crossings[1].type == WallType::II_remove_ray);
    CHECK(pb.crossings[1].crepancy == 2);
    CHECK(pb.predicted_walls);
}

TEST_CASE("blow-up adds the exceptional character")
{
    auto g = f1_git();
    auto w = classify_wall(g, qv({1, 1}), qv({-1, 2}));
    auto b = blowup_git(g, w);
    CHECK(b.git.m() == 5);
    CHECK(b.git.rank == 3);
    CHECK(b.exceptional_relation);
    CHECK(b.torsion.empty());
    CHECK(validate(b.git).valid);
}

TEST_CASE("change of variables across the F1 / P2 wall")
{
    auto g = f1_git();
    auto w = classify_wall(g, qv({1, 1}), qv({-1, 2}));
    auto cv = change_of_variables(g, w.e, qv({1, 1}), qv({-1, 2}), {qv({0, 1}), qv({1, 0})}, {qv({0, 1}), qv({-1, 1})});
    CHECK(cv.c == 1);
    REQUIRE(cv.c_i.size() == 1);
    CHECK(cv.c_i[0] == 1);
    CHECK(cv.exponents_agree);
}

TEST_CASE("K set of a weighted projective line has the expected sectors")
{
    // P(1,2): sectors at d in (1/2) Z
    GitData g{1, {qv({1}), qv({2})}, {}};
    auto ks = kset_enumerate(g, qv({1}), {qv({1})}, Q(2));
    std::vector<Q> ds;
    for (auto& s : ks) ds.push_back(s.d[0]);
    CHECK(ds == std::vector<Q>{Q(0), Q(1, 2), Q(1), Q(3, 2), Q(2)});
    for (auto& s : ks) {
        if (is_integer(s.d[0])) CHECK(s.age == 0);
        else CHECK(s.age == Q(1, 2));
    }
}
