#include "helpers.hpp"

#include "wallcross/hfun.hpp"
#include "wallcross/periods.hpp"

#include <doctest.h>

using namespace wallcross;

namespace {

GitData f1_git() { return GitData{2, {qv({0, 1}), qv({-1, 1}), qv({1, 0}), qv({1, 0})}, {}}; }

PairData p2_two_lines()
{
    PairData p;
    p.git = GitData{1, {qv({1}), qv({1}), qv({1})}, {}};
    p.omega = qv({1});
    p.basis = {qv({1})};
    p.basis_names = {"H"};
    p.config.relative = std::vector<int>{1, 2};
    return p;
}

PairData p3_side()
{
    PairData e;
    e.git = GitData{1, {qv({1}), qv({1}), qv({1}), qv({1}), qv({1})}, {}};
    e.omega = qv({1});
    e.basis = {qv({1})};
    e.basis_names = {"H"};
    e.config.ci = {qv({1})};
    e.config.rel_bundles = {qv({4})};
    e.N = 3;
    return e;
}

PairData q4_side()
{
    PairData f = p3_side();
    f.config.ci = {qv({4})};
    f.config.rel_bundles = {qv({1})};
    return f;
}

} // namespace

TEST_CASE("H and I agree blockwise on P2 relative to two lines")
{
    auto rp = resolve(p2_two_lines());
    auto r = h_i_consistency(rp, Q(3));
    CHECK(r.ok);
    CHECK(r.blocks > 0);
}

TEST_CASE("every single-ingredient mutation breaks H-I consistency")
{
    auto rp = resolve(p2_two_lines());
    for (auto m : {Mutation::GammaHat, Mutation::Mu, Mutation::Rho, Mutation::Inv, Mutation::Tau}) {
        CAPTURE(to_string(m));
        auto r = h_i_consistency(rp, Q(3), m);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(r.first_mismatch.empty());
    }
}

TEST_CASE("F1 and P2 H-functions agree across the wall")
{
    auto g = f1_git();
    PairData a;
    a.git = g;
    a.omega = qv({1, 1});
    a.omega_other = qv({-1, 2});
    a.basis = {qv({0, 1}), qv({1, 0})};
    a.basis_names = {"H", "P"};
    a.config.relative = std::vector<int>{1, 2, 3};
    a.zero_vars = {1};
    a.N = 2;
    PairData b;
    b.git = g;
    b.omega = qv({-1, 2});
    b.omega_other = qv({1, 1});
    b.basis = {qv({0, 1}), qv({-1, 1})};
    b.basis_names = {"H", "D2"};
    b.zero_vars = {1};
    b.N = 2;
    auto ra = resolve(a), rb = resolve(b);
    auto ha = h_series(ra, Q(6)), hb = h_series(rb, Q(6));
    CompareOptions o;
    o.phi = {qv({1, 0}), qv({0, 0})};
    auto r = compare_sides(ra, ha, rb, hb, o);
    CHECK(r.ok);
    CHECK(r.mismatches.empty());
    CHECK(r.matched.size() == 7);
    CHECK(r.specialization_ok);
    for (auto& u : r.unmatched_plus)
        if (u.reason == "specialized") CHECK(ha.entries[u.index].d.u[1] > 0);
}

TEST_CASE("local flip identification to bound 4")
{
    GitData g{2, {qv({0, 1}), qv({0, 1}), qv({0, 1}), qv({1, -1}), qv({1, -1}), qv({1, 0})}, {}};
    PairData c;
    c.git = g;
    c.omega = qv({2, 1});
    c.omega_other = qv({2, -1});
    c.basis = {qv({1, 0}), qv({0, 1})};
    c.basis_names = {"xi", "h"};
    c.config.relative = std::vector<int>{0};
    c.N = 4;
    PairData d = c;
    d.omega = qv({2, -1});
    d.omega_other = qv({2, 1});
    d.basis = {qv({1, 0}), qv({1, -1})};
    auto rc = resolve(c), rd = resolve(d);
    REQUIRE(rc.wall);
    CHECK(rc.wall->type == WallType::I);
    CompareOptions o;
    o.phi = {qv({1, 0}), qv({1, -1})};
    auto r = compare_sides(rc, h_series(rc, Q(4)), rd, h_series(rd, Q(4)), o);
    CHECK(r.ok);
    CHECK(r.matched.size() == 15);
}

TEST_CASE("exchange divisor: P3 relative quartic against quartic relative hyperplane")
{
    auto re = resolve(p3_side()), rf = resolve(q4_side());
    auto he = h_series(re, Q(5)), hf = h_series(rf, Q(5));
    CompareOptions o;
    o.phi = {qv({1})};
    o.use_wall = false;
    auto r = compare_sides(re, he, rf, hf, o);
    CHECK(r.ok);
    CHECK(r.matched.size() == 6);
}

TEST_CASE("quartic H coefficients have period scalar parts")
{
    auto rf = resolve(q4_side());
    auto hf = h_series(rf, Q(5));
    Factorials f;
    auto per = q4_k3(5, f);
    int seen = 0;
    for (auto& e : hf.entries) {
        if (!is_integer(e.d.d[0])) continue;
        long long d = to_ll(e.d.d[0]);
        Scalar s = e.coeff.extract(e.coeff.unit_mono());
        CAPTURE(d);
        CHECK(s.constant() == Q(per[d]));
        ++seen;
    }
    CHECK(seen == 6);
}

TEST_CASE("blow-up restriction to the divisor of hyperplane classes")
{
    PairData x;
    x.git = GitData{2, {qv({1, 0}), qv({1, 0}), qv({1, 0}), qv({1, 0}), qv({1, 0}), qv({0, 1}), qv({0, 1})}, {}};
    x.omega = qv({1, 1});
    x.basis = {qv({1, 0}), qv({0, 1})};
    x.basis_names = {"H", "P"};
    x.config.ci = {qv({1, 1}), qv({4, 0})};
    x.config.rel_bundles = {qv({0, 1})};
    x.zero_vars = {1};
    x.N = 3;
    auto rx = resolve(x), re = resolve(p3_side());
    CompareOptions o;
    o.phi = {qv({1}), qv({0})};
    o.class_map = QMat{qv({1, 0})};
    o.use_wall = false;
    auto r = compare_sides(rx, h_series(rx, Q(4)), re, h_series(re, Q(4)), o);
    CHECK(r.ok);
    CHECK(r.matched.size() == 5);
}

TEST_CASE("compare rejects a missing symbol image")
{
    auto re = resolve(p3_side()), rf = resolve(q4_side());
    CompareOptions o;
    o.use_wall = false;
    CHECK_THROWS_AS(compare_sides(re, h_series(re, Q(2)), rf, h_series(rf, Q(2)), o), Error);
}
