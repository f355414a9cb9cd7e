#include "wallcross/gammaring.hpp"

#include <doctest.h>

using namespace wallcross;

namespace {

Series negate_t(Series s)
{
    for (std::size_t k = 1; k < s.size(); k += 2) s[k] = -s[k];
    return s;
}

} // namespace

TEST_CASE("low-order Gamma coefficients")
{
    const int K = 4;
    Series g = gamma_series(3, K);
    Scalar ga = Scalar::gamma(K), z2 = Scalar::zeta(2, K), z3 = Scalar::zeta(3, K);
    CHECK(g[0] == Scalar(K, Q(1)));
    CHECK(g[1] == -ga);
    CHECK(g[2] == ga * ga * Q(1, 2) + z2 * Q(1, 2));
    CHECK(g[3] == -(ga * ga * ga) * Q(1, 6) - ga * z2 * Q(1, 2) - z3 * Q(1, 3));
}

TEST_CASE("Gamma times reciprocal Gamma is one")
{
    for (int N = 1; N <= 6; ++N) {
        Series p = series_mul(gamma_series(N, N), rgamma_series(N, N));
        CHECK(p == series_one(N, N));
    }
}

TEST_CASE("reflection leaves only even zeta values")
{
    const int N = 6, K = 6;
    Series p = series_mul(gamma_series(N, K), negate_t(gamma_series(N, K)));
    // log of pi t / sin(pi t) = sum 2 zeta(2k) t^{2k} / (2k)
    Series l(N + 1, Scalar(K));
    for (int k = 2; k <= N; k += 2) l[k] = Scalar::zeta(k, K) * Q(2, k);
    CHECK(p == series_exp(l));
}

TEST_CASE("shift recurrence")
{
    const int N = 4, K = 4;
    for (long long n = 0; n <= 4; ++n) {
        GammaShift a = gamma_shift(n, N, K), b = gamma_shift(n + 1, N, K);
        CHECK(a.t_power == 0);
        CHECK(series_mul(a.unit, series_linear(Q(n + 1), N, K)) == b.unit);
        CHECK(series_mul(gamma_shift_recip(n, N, K), a.unit) == series_one(N, K));
    }
    GammaShift m = gamma_shift(-1, N, K);
    CHECK(m.t_power == -1);
    CHECK(m.unit == gamma_series(N, K));
    Series r = gamma_shift_recip(-1, N, K);
    CHECK(r[0].is_zero());
    CHECK(r[1] == Scalar(K, Q(1)));
}

TEST_CASE("scalar truncation by weight")
{
    const int K = 3;
    Scalar z2 = Scalar::zeta(2, K);
    CHECK((z2 * z2).is_zero());
    CHECK(!(z2 * Scalar::gamma(K)).is_zero());
    Scalar u = Scalar(K, Q(2)) + z2;
    CHECK(u * u.inverse() == Scalar(K, Q(1)));
}

TEST_CASE("nilpotent symbols truncate at the cutoff")
{
    auto h = NilpotentPoly::symbol(1, 2, 2, 0);
    CHECK(!(h * h).is_zero());
    CHECK((h * h * h).is_zero());
}
