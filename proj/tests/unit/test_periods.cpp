#include "wallcross/periods.hpp"

#include <doctest.h>

using namespace wallcross;

TEST_CASE("quartic period coefficients")
{
    Factorials f;
    auto c = q4_k3(8, f);
    REQUIRE(c.size() == 9);
    CHECK(c[0] == 1);
    CHECK(c[1] == 24);
    CHECK(c[2] == 2520);
    CHECK(c[3] == 369600);
    // (4d)!/(d!)^4 by a product of binomials
    for (long long d = 0; d <= 8; ++d) {
        Z b = 1;
        for (long long k = 1; k <= 4; ++k) {
            Z num = 1, den = 1;
            for (long long j = 0; j < d; ++j) {
                num *= Z(k * d - j);
                den *= Z(j + 1);
            }
            b *= num / den;
        }
        CHECK(c[d] == b);
    }
}

TEST_CASE("period relations hold")
{
    auto r = period_relations(8);
    CHECK(r.ok());
    CHECK(r.mismatches.empty());
}

TEST_CASE("corrupted coefficient is reported")
{
    Factorials f;
    auto p3 = p3_k3(4, f);
    auto q4 = q4_k3(4, f);
    auto x = x_blowup_k3(4, f);
    q4[2] += 1;
    auto r = check_period_relations(p3, q4, x);
    CHECK_FALSE(r.q4_matches_p3);
    CHECK(r.x_restricts_to_p3);
}

TEST_CASE("blow-up period row is integral and binomial in d2")
{
    Factorials f;
    auto x = x_blowup_k3(3, f);
    auto q4 = q4_k3(3, f);
    for (long long d1 = 0; d1 <= 3; ++d1)
        for (long long d2 = 0; d2 <= 3; ++d2) {
            Z binom = f(d1 + d2) / (f(d1) * f(d2));
            CHECK(x[d1][d2] == q4[d1] * binom);
        }
}
