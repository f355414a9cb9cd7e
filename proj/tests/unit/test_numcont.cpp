#include "wallcross/numcont.hpp"

#include <doctest.h>

#include <cmath>

using namespace wallcross;
using C = std::complex<double>;

TEST_CASE("complex Gamma against the real Gamma function")
{
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 20.0, 50.0, -0.5, -2.5, -7.3}) {
        CAPTURE(x);
        C g = cgamma(C(x));
        CHECK(std::abs(g.real() / std::tgamma(x) - 1) < 1e-12);
        CHECK(std::abs(g.imag()) < 1e-12 * std::abs(g.real()));
    }
    CHECK_THROWS_AS(cgamma(C(-3.0)), Error);
}

TEST_CASE("complex Gamma recurrence and conjugation")
{
    for (C z : {C(0.5, 3), C(-1.5, 0.2), C(4, -7), C(0.01, 0.01)}) {
        CAPTURE(z);
        CHECK(std::abs(cgamma(z + 1.0) - z * cgamma(z)) < 1e-12 * std::abs(z * cgamma(z)));
        CHECK(std::abs(cgamma(std::conj(z)) - std::conj(cgamma(z))) < 1e-13 * std::abs(cgamma(z)));
    }
    // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
    for (double y : {0.5, 2.0, 6.0}) CHECK(std::abs(std::norm(cgamma(C(0.5, y))) * std::cosh(M_PI * y) / M_PI - 1) < 1e-12);
}

TEST_CASE("cubic series leading term")
{
    auto sp = cubic_surface_spec();
    for (C h : {C(0.05), C(0.1, 0.03)}) {
        auto s = series_eval<double>(sp, C(1e-30), h, 4);
        C lead = cgamma(1.0 + 3.0 * h) / (std::pow(cgamma(1.0 + h), 4) * cgamma(1.0 - h));
        CHECK(std::abs(s.value.value - lead) < 1e-12);
    }
}

TEST_CASE("series truncation is stable")
{
    auto sp = cubic_surface_spec();
    auto a = series_eval<double>(sp, C(0.02), C(0.05), 40);
    auto b = series_eval<double>(sp, C(0.02), C(0.05), 60);
    CHECK(std::abs(a.value.value - b.value.value) < 1e-14);
    CHECK(a.tail < 1e-12);
    CHECK(b.tail < a.tail);
    CHECK_THROWS_AS(series_eval<double>(sp, C(0.05), C(0.05), 40), Error);
}

TEST_CASE("contour integral matches series and continued series")
{
    auto sp = cubic_surface_spec();
    auto data = make_fjrw({1, 1, 1, 1}, 3);
    for (C h : {C(0.05), C(0.05, 0.02), C(0.11, -0.03)}) {
        auto mb = mellin_barnes<double>(sp, C(0.01), h);
        auto se = series_eval<double>(sp, C(0.01), h, 60);
        CHECK(std::abs(mb.value.value - se.value.value) < 1e-12);
        auto mb2 = mellin_barnes<double>(sp, C(100), h);
        auto cs = continued_series<double>(data, C(100), h, 60);
        CHECK(std::abs(mb2.value.value - cs.value.value) < 1e-12);
        CHECK(mb2.direction == -1);
    }
}

TEST_CASE("Schwarz reflection of the contour value")
{
    auto sp = cubic_surface_spec();
    C h(0.07, 0.02);
    auto a = mellin_barnes<double>(sp, C(0.01), h);
    auto b = mellin_barnes<double>(sp, C(0.01), std::conj(h));
    CHECK(std::abs(a.value.value - std::conj(b.value.value)) < 1e-13);
}

TEST_CASE("exponential kernel is rejected as slowly decaying")
{
    CHECK_THROWS_WITH_AS(mellin_barnes<double>(cubic_surface_exponential_spec(), C(0.01), C(0.05)), doctest::Contains("SlowDecay"), Error);
}

TEST_CASE("contour through a pole is rejected")
{
    auto sp = cubic_surface_spec();
    sp.sigma = 0;
    CHECK_THROWS_WITH_AS(mellin_barnes<double>(sp, C(0.01), C(0.05)), doctest::Contains("PoleOnContour"), Error);
}

TEST_CASE("residues at the continued poles")
{
    for (long long m = 1; m <= 5; ++m) {
        auto r = residue_check(m);
        CAPTURE(m);
        CHECK(r.ok);
        CHECK(std::abs(r.closed_form - C(-(1.0 / 3) * ((m % 2) ? -1.0 : 1.0) / std::tgamma(double(m)))) < 1e-15);
        CHECK(r.difference < 1e-9);
    }
    CHECK(std::abs(residue_check(3, 5).numeric - C(0.1)) < 1e-12);
}

TEST_CASE("narrow indices by brute force")
{
    for (auto [w, d] : std::vector<std::pair<std::vector<long long>, long long>>{{{1, 1, 1, 1}, 3}, {{1, 1, 1, 1, 1}, 3}, {{1, 1, 2}, 4}, {{1, 2, 3}, 6}}) {
        std::vector<long long> expect;
        for (long long k = 0; k < d; ++k) {
            bool fixed = false;
            for (long long wi : w) {
                // e^{2 pi i (k+1) w_i / d} = 1
                double ang = 2 * M_PI * double((k + 1) * wi) / double(d);
                if (std::abs(std::cos(ang) - 1) < 1e-12) fixed = true;
            }
            if (!fixed) expect.push_back(k);
        }
        CHECK(make_fjrw(w, d).nar == expect);
    }
    CHECK(make_fjrw({1, 1, 1, 1}, 3).nar == std::vector<long long>{0, 1});
}

TEST_CASE("quintic is not Fano")
{
    auto data = make_fjrw({1, 1, 1, 1, 1}, 5);
    CHECK(data.dprime == 0);
    CHECK_THROWS_WITH_AS(connection_report("general", data, default_connection_points(5000), 1e-6), doctest::Contains("NonFano"), Error);
    CHECK_THROWS_AS(make_fjrw({2, 4}, 4), Error);
}

TEST_CASE("cubic connection coefficients")
{
    auto r = connection_check("cubic", make_fjrw({1, 1, 1, 1}, 3), default_connection_points(200), 1e-6);
    CHECK(r.ok);
    CHECK(r.max_difference < 1e-12);
    CHECK_THROWS_WITH_AS(connection_check("cubic", make_fjrw({1, 1, 1, 1}, 3), default_connection_points(200), 0), doctest::Contains("ToleranceExceeded"), Error);
    CHECK_THROWS_WITH_AS(connection_check("cubic", make_fjrw({1, 1, 1, 1}, 3), default_connection_points(20), 1e-6), doctest::Contains("OutsideDisk"), Error);
}

TEST_CASE("cubic threefold connection")
{
    auto r = connection_check("general", make_fjrw({1, 1, 1, 1, 1}, 3), default_connection_points(2160), 1e-6);
    CHECK(r.ok);
}

TEST_CASE("transition limit for a projective line")
{
    auto tr = transition_limit_check({1, 1});
    CHECK(tr.audit_ok);
    CHECK(tr.decay_ok);
    for (double x : tr.ratios) CHECK(x >= 8);
    for (std::size_t i = 0; i < tr.values.size(); ++i) CHECK(std::abs(tr.values[i] - tr.contour[i]) < 1e-9);
}
