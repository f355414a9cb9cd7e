#ifndef WALLCROSS_NUMCONT_HPP
#define WALLCROSS_NUMCONT_HPP

#include "rational.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace wallcross {

using Ext = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

template <class T>
using Cx = std::complex<T>;

template <class T>
struct ComplexValue {
    Cx<T> value{};
    double error = 0;
};

template <class T>
T pi_v() { return boost::math::constants::pi<T>(); }

template <class T>
T to_real(const Q& q)
{
    return T(num(q).convert_to<long long>()) / T(den(q).convert_to<long long>());
}

template <class T>
Cx<double> to_double(const Cx<T>& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class T>
T cabs(const Cx<T>& z)
{
    using std::fabs;
    using std::sqrt;
    T a = fabs(z.real()), b = fabs(z.imag());
    if (a < b) std::swap(a, b);
    if (a == 0) return T(0);
    T r = b / a;
    return a * sqrt(T(1) + r * r);
}

template <class T>
Cx<T> cexp(const Cx<T>& z)
{
    using std::cos;
    using std::exp;
    using std::sin;
    T m = exp(z.real());
    return {m * cos(z.imag()), m * sin(z.imag())};
}

template <class T>
Cx<T> clog(const Cx<T>& z)
{
    using std::atan2;
    using std::log;
    return {log(cabs(z)), atan2(z.imag(), z.real())};
}

template <class T>
Cx<T> csin(const Cx<T>& z)
{
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}

// log sin(pi z), stable for large |Im z|; the branch is irrelevant after exponentiation
template <class T>
Cx<T> log_sin_pi(const Cx<T>& z)
{
    using std::log;
    const T pi = pi_v<T>();
    const Cx<T> I(0, 1);
    T y = z.imag();
    if (y > 15) {
        Cx<T> lead(pi * y, -pi * z.real());
        return lead + Cx<T>(log(T(0.5)), pi / 2) + clog(Cx<T>(1) - cexp(T(2) * pi * I * z));
    }
    if (y < -15) {
        Cx<T> lead(-pi * y, pi * z.real());
        return lead + Cx<T>(log(T(0.5)), -pi / 2) + clog(Cx<T>(1) - cexp(T(-2) * pi * I * z));
    }
    return clog(csin(pi * z));
}

template <class T>
struct GammaTuning;
template <>
struct GammaTuning<double> {
    static constexpr double shift_radius = 10;
    static constexpr int terms = 12;
};
template <>
struct GammaTuning<Ext> {
    static constexpr double shift_radius = 40;
    static constexpr int terms = 30;
};

template <class T>
const std::vector<T>& stirling_coefficients()
{
    static const std::vector<T> c = [] {
        std::vector<T> v;
        for (int k = 1; k <= GammaTuning<T>::terms; ++k)
            v.push_back(boost::math::bernoulli_b2n<T>(k) / (T(2 * k) * T(2 * k - 1)));
        return v;
    }();
    return c;
}

template <class T>
double pole_distance(const Cx<T>& z)
{
    using std::round;
    double re = static_cast<double>(z.real());
    if (re > 0.5) return std::numeric_limits<double>::infinity();
    double n = std::round(re);
    if (n > 0) n = 0;
    return std::hypot(re - n, static_cast<double>(z.imag()));
}

template <class T>
Cx<T> clgamma(Cx<T> z)
{
    using std::log;
    const T pi = pi_v<T>();
    if (z.real() < T(0.5)) return Cx<T>(log(pi)) - log_sin_pi(z) - clgamma(Cx<T>(1) - z);
    Cx<T> prod(1);
    bool shifted = false;
    while (cabs(z) < T(GammaTuning<T>::shift_radius)) {
        prod *= z;
        z += T(1);
        shifted = true;
    }
    Cx<T> r = (z - T(0.5)) * clog(z) - z + Cx<T>(log(T(2) * pi) / 2);
    Cx<T> zi = Cx<T>(1) / z, z2 = zi * zi, p = zi;
    for (const T& c : stirling_coefficients<T>()) {
        r += c * p;
        p *= z2;
    }
    return shifted ? r - clog(prod) : r;
}

template <class T>
Cx<T> cgamma(const Cx<T>& z)
{
    if (pole_distance(z) < 1e-9) {
        std::ostringstream os;
        os << "Gamma evaluated within 1e-9 of a pole at " << to_double(z);
        throw Error("PoleProximity", os.str());
    }
    return cexp(clgamma(z));
}

// 1/Gamma, entire
template <class T>
Cx<T> crgamma(const Cx<T>& z)
{
    const T pi = pi_v<T>();
    if (z.real() < T(0.5)) return csin(pi * z) * cexp(clgamma(Cx<T>(1) - z)) / pi;
    return cexp(-clgamma(z));
}

// Mellin-Barnes integrands

struct GammaFactor {
    Q a, b, c;
    int exponent = 1;
};

enum class Kernel { Exponential, Sine };

inline std::string to_string(Kernel k) { return k == Kernel::Sine ? "sine" : "exponential"; }

struct MellinBarnesSpec {
    std::string name;
    std::vector<GammaFactor> factors;
    Kernel kernel = Kernel::Exponential;
    Q phase = 0;
    std::optional<double> sigma;
};

struct ContourOptions {
    double tol = 1e-12;
    double t0 = 5;
    double beta = 1;
    bool bent = true;
    double umax = 200;
    double panel = 1;
};

template <class T>
struct MBResult {
    ComplexValue<T> value;
    double sigma = 0;
    int direction = 0;
    double decay_rate = 0;
    double tail_length = 0;
    long evaluations = 0;
};

inline Q factor_balance(const MellinBarnesSpec& spec)
{
    Q b = 0;
    for (const auto& f : spec.factors) b += f.a * f.exponent;
    return b;
}

// ratio of consecutive right residues tends to M q
inline double log_ratio_constant(const MellinBarnesSpec& spec)
{
    double r = 0;
    for (const auto& f : spec.factors) {
        if (f.a == 0) continue;
        double a = f.a.convert_to<double>();
        r += f.exponent * a * std::log(std::fabs(a));
    }
    return r;
}

// exponential rate of |integrand| along Re s = const as Im s -> +inf (first) and -inf (second)
inline std::pair<double, double> vertical_decay(const MellinBarnesSpec& spec, double arg_q)
{
    double base = 0;
    for (const auto& f : spec.factors) base -= f.exponent * M_PI * std::fabs(f.a.convert_to<double>()) / 2;
    double kup = spec.kernel == Kernel::Sine ? -M_PI : 0;
    double kdown = spec.kernel == Kernel::Sine ? -M_PI : -2 * M_PI;
    return {base + kup - arg_q, base + kdown + arg_q};
}

template <class T>
Cx<T> affine(const GammaFactor& f, const Cx<T>& s, const Cx<T>& h)
{
    return to_real<T>(f.a) * s + to_real<T>(f.b) * h + Cx<T>(to_real<T>(f.c));
}

template <class T>
Cx<T> log_kernel(const MellinBarnesSpec& spec, const Cx<T>& s, const Cx<T>& h)
{
    using std::log;
    const T pi = pi_v<T>();
    const Cx<T> I(0, 1);
    Cx<T> w = s + Cx<T>(to_real<T>(spec.phase));
    if (spec.kernel == Kernel::Sine) return log_sin_pi(h) - log_sin_pi(w);
    Cx<T> l2pii(log(T(2) * pi), pi / 2);
    if (w.imag() < T(-5)) return l2pii - (T(2) * pi * I * w + clog(Cx<T>(1) - cexp(T(-2) * pi * I * w)));
    return l2pii - clog(cexp(T(2) * pi * I * w) - Cx<T>(1));
}

template <class T>
Cx<T> log_integrand(const MellinBarnesSpec& spec, const Cx<T>& s, const Cx<T>& logq, const Cx<T>& h)
{
    Cx<T> r = (s + Cx<T>(to_real<T>(spec.phase))) * logq + log_kernel(spec, s, h);
    for (const auto& f : spec.factors) r += T(f.exponent) * clgamma(affine(f, s, h));
    return r;
}

template <class T>
struct GK15 {
    std::vector<T> xk, wk, wg;
    GK15()
    {
        const auto& a = boost::math::quadrature::gauss_kronrod<T, 15>::abscissa();
        const auto& w = boost::math::quadrature::gauss_kronrod<T, 15>::weights();
        const auto& g = boost::math::quadrature::gauss<T, 7>::weights();
        xk.assign(a.begin(), a.end());
        wk.assign(w.begin(), w.end());
        wg.assign(g.begin(), g.end());
    }
};

template <class T, class F>
std::pair<Cx<T>, double> gk15(const F& g, T a, T b)
{
    static const GK15<T> rule;
    T c = (a + b) / 2, hl = (b - a) / 2;
    Cx<T> fc = g(c);
    Cx<T> k = fc * rule.wk[0], gs = fc * rule.wg[0];
    for (std::size_t j = 1; j < rule.xk.size(); ++j) {
        T x = hl * rule.xk[j];
        Cx<T> pair = g(c - x) + g(c + x);
        k += rule.wk[j] * pair;
        if (j % 2 == 0) gs += rule.wg[j / 2] * pair;
    }
    return {k * hl, static_cast<double>(cabs(Cx<T>((k - gs) * hl)))};
}

template <class T, class F>
std::pair<Cx<T>, double> adaptive(const F& g, T a, T b, double tol, int depth = 0)
{
    auto [r, e] = gk15<T>(g, a, b);
    double floor = 64 * static_cast<double>(std::numeric_limits<T>::epsilon()) * static_cast<double>(cabs(r));
    if (e <= std::max(tol, floor) || depth >= 30) return {r, e};
    T m = (a + b) / 2;
    auto [r1, e1] = adaptive<T>(g, a, m, tol / 2, depth + 1);
    auto [r2, e2] = adaptive<T>(g, m, b, tol / 2, depth + 1);
    return {r1 + r2, e1 + e2};
}

inline double default_sigma(const MellinBarnesSpec& spec, std::complex<double> h)
{
    if (spec.sigma) return *spec.sigma;
    return -std::min(std::max(h.real(), 0.0), 1.0) / 2;
}

template <class T>
void check_contour(const MellinBarnesSpec& spec, double sigma, const Cx<T>& h, double t0)
{
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "contour Re(s)=" << sigma << " passes within 1e-3 of a pole of " << what;
        throw Error("PoleOnContour", os.str());
    };
    double ph = spec.phase.convert_to<double>();
    if (std::fabs(sigma + ph - std::round(sigma + ph)) < 1e-3) fail("the kernel");
    std::complex<double> hd = to_double(h);
    for (const auto& f : spec.factors) {
        if (f.exponent <= 0 || f.a == 0) continue;
        double a = f.a.convert_to<double>(), b = f.b.convert_to<double>(), c = f.c.convert_to<double>();
        // poles at a s + b h + c = -n
        double nstar = -(a * sigma + b * hd.real() + c);
        for (double n = std::floor(nstar) - 1; n <= std::ceil(nstar) + 1; ++n) {
            if (n < 0) continue;
            std::complex<double> p = (-n - b * hd - c) / a;
            if (std::fabs(p.real() - sigma) < 1e-3 && std::fabs(p.imag()) <= t0 + 1) fail("a Gamma factor");
        }
    }
}

template <class T>
MBResult<T> mellin_barnes(const MellinBarnesSpec& spec, const Cx<T>& q, const Cx<T>& h, const ContourOptions& opt = {})
{
    using std::log;
    const T pi = pi_v<T>();
    const Cx<T> I(0, 1);
    if (q == Cx<T>(0)) throw Error("InvalidArgument", "q must be nonzero");
    Cx<T> logq = clog(q);
    std::complex<double> hd = to_double(h);
    MBResult<T> res;
    res.sigma = default_sigma(spec, hd);
    check_contour(spec, res.sigma, h, opt.t0);

    auto [up, down] = vertical_decay(spec, static_cast<double>(logq.imag()));
    res.decay_rate = std::max(up, down);
    Q bal = factor_balance(spec);
    double logmq = log_ratio_constant(spec) + static_cast<double>(logq.real());
    bool bend = opt.bent && bal == 0 && std::fabs(logmq) > 1e-9;
    if (res.decay_rate > 1e-12 || (res.decay_rate > -1e-12 && !bend)) {
        std::ostringstream os;
        os << "vertical decay rate " << res.decay_rate << " is not negative";
        if (res.decay_rate > -1e-12) os << " and the contour cannot be bent";
        throw Error("SlowDecay", os.str());
    }
    res.direction = bend ? (logmq > 0 ? -1 : 1) : 0;

    long evals = 0;
    auto f = [&](const Cx<T>& s) {
        ++evals;
        return cexp(log_integrand(spec, s, logq, h));
    };
    const T sigma(res.sigma), t0(opt.t0);
    Cx<T> total(0);
    double err = 0, l1 = 0;
    double seg_tol = opt.tol / 4;

    auto vert = [&](const T& t) { return f(Cx<T>(sigma, t)) * I; };
    int panels = std::max(1, static_cast<int>(std::ceil(2 * opt.t0 / opt.panel)));
    for (int p = 0; p < panels; ++p) {
        T a = -t0 + T(2) * t0 * T(p) / T(panels), b = -t0 + T(2) * t0 * T(p + 1) / T(panels);
        auto [r, e] = adaptive<T>(vert, a, b, seg_tol / panels);
        total += r;
        err += e;
        l1 += static_cast<double>(cabs(r));
    }

    T dx = T(opt.beta * res.direction);
    for (int sgn : {1, -1}) {
        Cx<T> dir(dx, T(sgn));
        Cx<T> start(sigma, T(sgn) * t0);
        auto tail = [&](const T& u) { return f(start + u * dir) * dir; };
        double u = 0, len = opt.panel;
        int quiet = 0;
        while (quiet < 2) {
            if (u > opt.umax) {
                std::ostringstream os;
                os << "integrand has not decayed after tail length " << opt.umax;
                throw Error("SlowDecay", os.str());
            }
            auto [r, e] = adaptive<T>(tail, T(u), T(u + len), seg_tol / 16);
            Cx<T> contrib = sgn > 0 ? r : -r;
            total += contrib;
            err += e;
            l1 += static_cast<double>(cabs(r));
            double mag = static_cast<double>(cabs(r));
            if (mag < opt.tol / 100) {
                ++quiet;
                err += mag;
            } else {
                quiet = 0;
            }
            u += len;
            if (mag < opt.tol) len = std::min(len * 2, 8.0);
        }
        res.tail_length = std::max(res.tail_length, u);
    }
    res.value.value = -total / (T(2) * pi * I);
    err += 256 * static_cast<double>(std::numeric_limits<T>::epsilon()) * l1;
    res.value.error = err / (2 * M_PI);
    res.evaluations = evals;
    return res;
}

// truncated right-residue series Sum_n Res_{s=n} of the integrand

template <class T>
struct SeriesValue {
    ComplexValue<T> value;
    long terms = 0;
    double tail = 0;
    double ratio = 0;
};

template <class T>
Cx<T> gamma_product_log(const std::vector<GammaFactor>& factors, const Cx<T>& s, const Cx<T>& h, bool& zero)
{
    Cx<T> r(0);
    for (const auto& f : factors) {
        Cx<T> z = affine(f, s, h);
        double dist = pole_distance(z);
        if (f.exponent < 0 && dist < 1e-13) {
            zero = true;
            return r;
        }
        if (f.exponent > 0 && dist < 1e-9) {
            std::ostringstream os;
            os << "residue term hits a Gamma pole at " << to_double(z);
            throw Error("PoleProximity", os.str());
        }
        r += T(f.exponent) * clgamma(z);
    }
    return r;
}

inline double tail_bound(const std::vector<double>& mags, double asymptotic)
{
    if (mags.empty()) return 0;
    double last = 0;
    for (auto it = mags.rbegin(); it != mags.rend(); ++it)
        if (*it > 0) {
            last = *it;
            break;
        }
    if (last == 0) return 0;
    double r = asymptotic;
    int seen = 0;
    for (std::size_t i = mags.size() - 1; i > 0 && seen < 3; --i) {
        if (mags[i] > 0 && mags[i - 1] > 0) {
            r = std::max(r, mags[i] / mags[i - 1]);
            ++seen;
        }
    }
    if (r >= 1) return std::numeric_limits<double>::infinity();
    return 2 * last * r / (1 - r);
}

template <class T>
SeriesValue<T> series_eval(const MellinBarnesSpec& spec, const Cx<T>& q, const Cx<T>& h, long terms)
{
    using std::log;
    const T pi = pi_v<T>();
    if (factor_balance(spec) != 0) throw Error("InvalidArgument", "series needs balanced Gamma factors");
    double lm = log_ratio_constant(spec);
    double aq = static_cast<double>(cabs(q));
    SeriesValue<T> out;
    out.ratio = std::exp(lm) * aq;
    if (aq > 0 && out.ratio >= 0.8) {
        std::ostringstream os;
        os << "|q|=" << aq << " is outside the convergence disk |q| < " << 0.8 * std::exp(-lm);
        throw Error("OutsideDisk", os.str());
    }
    Cx<T> ph(to_real<T>(spec.phase));
    Cx<T> logq = aq > 0 ? clog(q) : Cx<T>(0);
    Cx<T> kres_log(0);
    if (spec.kernel == Kernel::Sine) kres_log = log_sin_pi(h) - Cx<T>(log(pi));
    std::vector<double> mags;
    Cx<T> sum(0);
    long n = 0;
    for (long k = 0; k < terms; ++k) {
        Cx<T> s = Cx<T>(T(k)) - ph;
        if (s.real() <= T(default_sigma(spec, to_double(h)))) continue;
        if (aq == 0 && k > 0) break;
        bool zero = false;
        Cx<T> lg = gamma_product_log(spec.factors, s, h, zero);
        Cx<T> t(0);
        if (!zero) {
            Cx<T> l = lg + kres_log + (aq > 0 ? T(k) * logq : Cx<T>(0));
            t = cexp(l);
            if (spec.kernel == Kernel::Sine && k % 2) t = -t;
        }
        sum += t;
        mags.push_back(static_cast<double>(cabs(t)));
        ++n;
    }
    out.terms = n;
    out.tail = aq == 0 ? 0 : tail_bound(mags, out.ratio);
    out.value.value = sum;
    out.value.error = out.tail;
    return out;
}

// FJRW data and the Gamma family of the Fano-index one / general (w, d) integrand

struct FJRWData {
    std::vector<long long> w;
    long long d = 0;
    long long dprime = 0;
    std::vector<Q> charges;
    std::vector<long long> nar;
};

inline std::vector<long long> narrow_indices(const std::vector<long long>& w, long long d)
{
    std::vector<long long> nar;
    for (long long k = 0; k < d; ++k) {
        bool ok = true;
        for (long long wi : w)
            if (((k + 1) * wi) % d == 0) ok = false;
        if (ok) nar.push_back(k);
    }
    return nar;
}

inline FJRWData make_fjrw(const std::vector<long long>& w, long long d)
{
    if (w.empty() || d <= 0) throw Error("InvalidArgument", "weights and a positive degree are required");
    long long g = 0, sum = 0;
    for (long long wi : w) {
        if (wi <= 0) throw Error("InvalidArgument", "weights must be positive");
        if (d % wi != 0) throw Error("InvalidArgument", "weight " + std::to_string(wi) + " does not divide d=" + std::to_string(d));
        g = std::gcd(g, wi);
        sum += wi;
    }
    if (g != 1) throw Error("InvalidArgument", "weights must have gcd 1");
    FJRWData r;
    r.w = w;
    r.d = d;
    r.dprime = sum - d;
    for (long long wi : w) r.charges.push_back(Q(wi, d));
    r.nar = narrow_indices(w, d);
    return r;
}

inline void require_fano(const FJRWData& data)
{
    if (data.dprime <= 0) throw Error("NonFano", "d' = " + std::to_string(data.dprime) + " is not positive");
}

// Gamma(1+dx) Gamma(1-x) Gamma(x) / (Gamma(1-d'x) prod Gamma(1+w_i x)), x = h + s, sine kernel
inline MellinBarnesSpec fjrw_family_spec(const FJRWData& data)
{
    MellinBarnesSpec s;
    s.name = "fjrw_family";
    s.kernel = Kernel::Sine;
    Q d(data.d), dp(data.dprime);
    s.factors.push_back({d, d, 1, 1});
    s.factors.push_back({-1, -1, 1, 1});
    s.factors.push_back({-dp, -dp, 1, -1});
    s.factors.push_back({1, 1, 0, 1});
    for (long long wi : data.w) s.factors.push_back({Q(wi), Q(wi), 1, -1});
    return s;
}

inline MellinBarnesSpec cubic_surface_spec()
{
    auto s = fjrw_family_spec(make_fjrw({1, 1, 1, 1}, 3));
    s.name = "cubic_surface";
    return s;
}

// the literal cubic integrand with the 1/(e^{2 pi i s}-1) kernel
inline MellinBarnesSpec cubic_surface_exponential_spec()
{
    MellinBarnesSpec s;
    s.name = "cubic_surface_exponential";
    s.kernel = Kernel::Exponential;
    s.factors.push_back({3, 3, 1, 1});
    s.factors.push_back({1, 1, 1, -4});
    s.factors.push_back({-1, -1, 1, -1});
    return s;
}

template <class T>
struct ContinuedValue {
    ComplexValue<T> value;
    Cx<T> constant{};
    Cx<T> m_part{};
    Cx<T> l_part{};
    double tail = 0;
    long terms = 0;
};

template <class T>
Cx<T> family_rest_log(const FJRWData& data, const Cx<T>& x, bool& zero)
{
    // Gamma(1-x) Gamma(x) / (Gamma(1-d'x) prod Gamma(1+w x))
    std::vector<GammaFactor> f;
    f.push_back({-1, 0, 1, 1});
    f.push_back({Q(-data.dprime), 0, 1, -1});
    f.push_back({1, 0, 0, 1});
    for (long long wi : data.w) f.push_back({Q(wi), 0, 1, -1});
    return gamma_product_log(f, x, Cx<T>(0), zero);
}

inline double family_log_ratio(const FJRWData& data)
{
    return log_ratio_constant(fjrw_family_spec(data));
}

// c_m, minus the residue at s = -h - m/d
template <class T>
Cx<T> m_coefficient(const FJRWData& data, long long m, const Cx<T>& logq, const Cx<T>& h)
{
    const T pi = pi_v<T>();
    T x0 = T(-m) / T(data.d);
    bool zero = false;
    Cx<T> l = family_rest_log(data, Cx<T>(x0), zero);
    if (zero) return Cx<T>(0);
    Cx<T> s0 = Cx<T>(x0) - h;
    l += s0 * logq + log_sin_pi(h) - log_sin_pi(s0) - clgamma(Cx<T>(T(m)));
    Cx<T> c = cexp(l) / T(data.d);
    return m % 2 ? -c : c;
}

// minus the residue at s = -1-l
template <class T>
Cx<T> l_coefficient(const FJRWData& data, long long l, const Cx<T>& logq, const Cx<T>& h)
{
    using std::log;
    const T pi = pi_v<T>();
    Cx<T> x = h - T(1 + l);
    bool zero = false;
    Cx<T> g = family_rest_log(data, x, zero);
    if (zero) return Cx<T>(0);
    Cx<T> z1 = Cx<T>(1) + T(data.d) * x;
    if (pole_distance(z1) < 1e-13) return Cx<T>(0);
    g += clgamma(z1) + T(-1 - l) * logq + log_sin_pi(h) - Cx<T>(log(pi));
    Cx<T> v = cexp(g);
    // -(-1)^{l+1} = (-1)^l
    return l % 2 ? -v : v;
}

template <class T>
ContinuedValue<T> continued_series(const FJRWData& data, const Cx<T>& q, const Cx<T>& h, long terms)
{
    double lm = family_log_ratio(data);
    double aq = static_cast<double>(cabs(q));
    double ratio = std::exp(lm) / aq;
    if (aq == 0 || ratio >= 0.8) {
        std::ostringstream os;
        os << "|q|=" << aq << " is outside the continuation region |q| > " << std::exp(lm) / 0.8;
        throw Error("OutsideDisk", os.str());
    }
    Cx<T> logq = clog(q);
    ContinuedValue<T> out;
    out.constant = cexp(-h * logq);
    std::vector<double> mm, ml;
    for (long long m = 1; m <= terms; ++m) {
        if (m % data.d == 0) continue;
        Cx<T> c = m_coefficient<T>(data, m, logq, h);
        out.m_part += c;
        mm.push_back(static_cast<double>(cabs(c)));
    }
    for (long long l = 0; l < terms; ++l) {
        Cx<T> c = l_coefficient<T>(data, l, logq, h);
        out.l_part += c;
        ml.push_back(static_cast<double>(cabs(c)));
    }
    out.terms = terms;
    out.tail = tail_bound(mm, std::pow(ratio, 1.0 / data.d)) + tail_bound(ml, 1 / aq);
    out.value.value = out.constant + out.m_part + out.l_part;
    out.value.error = out.tail;
    return out;
}

// regularized FJRW series per narrow index

template <class T>
struct FJRWValues {
    std::vector<long long> k;
    std::vector<Cx<T>> h_reg;
    std::vector<Cx<T>> i_reg;
    std::vector<double> tail;
};

template <class T>
Cx<T> fjrw_term(const FJRWData& data, long long k, long long l, const Cx<T>& logtau, bool normalized)
{
    using std::log;
    long long m = data.d * l + k + 1;
    T md = T(m) / T(data.d);
    Cx<T> lg = T(data.dprime) * md * logtau - clgamma(Cx<T>(T(m))) - clgamma(Cx<T>(T(1) + T(data.dprime) * md));
    int sign = m % 2 ? -1 : 1;
    for (std::size_t i = 0; i < data.w.size(); ++i) {
        const Q& qi = data.charges[i];
        if (floor_q(qi * Q(m - 1)) % 2 != 0) sign = -sign;
        lg += clgamma(Cx<T>(to_real<T>(qi * Q(m))));
        if (normalized) lg -= clgamma(Cx<T>(to_real<T>(qi + frac(qi * Q(k)))));
    }
    Cx<T> v = cexp(lg);
    return sign < 0 ? -v : v;
}

template <class T>
FJRWValues<T> fjrw_reg(const FJRWData& data, const Cx<T>& tau, long terms)
{
    require_fano(data);
    if (tau == Cx<T>(0)) throw Error("InvalidArgument", "tau must be nonzero");
    Cx<T> lt = clog(tau);
    FJRWValues<T> out;
    for (long long k : data.nar) {
        Cx<T> h(0), i(0);
        std::vector<double> mags;
        for (long long l = 0; l < terms; ++l) {
            Cx<T> th = fjrw_term<T>(data, k, l, lt, false);
            h += th;
            i += fjrw_term<T>(data, k, l, lt, true);
            mags.push_back(static_cast<double>(cabs(th)));
        }
        out.k.push_back(k);
        out.h_reg.push_back(h);
        out.i_reg.push_back(i);
        out.tail.push_back(tail_bound(mags, 0));
    }
    return out;
}

// N_k = prod Gamma(q_i + <q_i k>)
template <class T>
Cx<T> fjrw_normalizer(const FJRWData& data, long long k)
{
    Cx<T> lg(0);
    for (const Q& qi : data.charges) lg += clgamma(Cx<T>(to_real<T>(qi + frac(qi * Q(k)))));
    return cexp(lg);
}

// R_k(h) with c_m = R_k N_k (I^reg_k term) q^{-h}, m = d l + k + 1
template <class T>
Cx<T> connection_coefficient(const FJRWData& data, long long k, const Cx<T>& h)
{
    using std::pow;
    using std::sin;
    const T pi = pi_v<T>();
    T r = pow(pi, T(1) - T(static_cast<long long>(data.w.size()))) / T(data.d);
    for (const Q& qi : data.charges) {
        T s = sin(pi * to_real<T>(qi * Q(k + 1)));
        if (floor_q(qi * Q(k)) % 2 != 0) s = -s;
        r *= s;
    }
    T a = T(k + 1) / T(data.d);
    Cx<T> hs = cexp(log_sin_pi(h)), ds = cexp(log_sin_pi(h + a));
    return r * hs / (sin(pi * a) * ds);
}

// the kernel form (2 pi i) e^{2 pi i m/d}/(e^{-2 pi i h} - e^{2 pi i m/d}) summed over the m family
template <class T>
Cx<T> displayed_combination(const FJRWData& data, const Cx<T>& q, const Cx<T>& h, long terms)
{
    const T pi = pi_v<T>();
    const Cx<T> I(0, 1);
    Cx<T> logq = clog(q), sum(0);
    for (long long m = 1; m <= terms; ++m) {
        if (m % data.d == 0) continue;
        Cx<T> ph = cexp(Cx<T>(0, T(2) * pi * T(m) / T(data.d)));
        Cx<T> kern = T(2) * pi * I * ph / (cexp(T(-2) * pi * I * h) - ph);
        T md = T(m) / T(data.d);
        Cx<T> acc = kern * cexp(-md * logq) * crgamma(Cx<T>(T(m))) * crgamma(Cx<T>(T(1) + T(data.dprime) * md));
        for (const Q& qi : data.charges) acc *= crgamma(Cx<T>(T(1) - to_real<T>(qi * Q(m))));
        sum += m % 2 ? -acc : acc;
    }
    return -cexp(-h * logq) * sum / T(data.d);
}

struct ConnectionSample {
    std::complex<double> q, h;
    std::complex<double> lhs, rhs, displayed;
    double lhs_error = 0;
    double rhs_tail = 0;
    double difference = 0;
    bool ok = false;
};

struct ConnectionReport {
    std::string kind;
    FJRWData data;
    double tol = 0;
    std::vector<ConnectionSample> samples;
    double max_difference = 0;
    bool ok = false;
};

template <class T>
ConnectionSample connection_sample(const FJRWData& data, const Cx<T>& q, const Cx<T>& h, double tol, long terms, const ContourOptions& opt)
{
    auto spec = fjrw_family_spec(data);
    auto mb = mellin_barnes<T>(spec, q, h, opt);
    Cx<T> logq = clog(q);
    Cx<T> tau = cexp(-logq / T(data.dprime));
    auto fj = fjrw_reg<T>(data, tau, terms);
    Cx<T> inner(1);
    for (std::size_t j = 0; j < fj.k.size(); ++j)
        inner += connection_coefficient<T>(data, fj.k[j], h) * fjrw_normalizer<T>(data, fj.k[j]) * fj.i_reg[j];
    Cx<T> lpart(0);
    for (long long l = 0; l < terms; ++l) lpart += l_coefficient<T>(data, l, logq, h);
    Cx<T> rhs = cexp(-h * logq) * inner + lpart;
    ConnectionSample s;
    s.q = to_double(q);
    s.h = to_double(h);
    s.lhs = to_double(mb.value.value);
    s.rhs = to_double(rhs);
    s.lhs_error = mb.value.error;
    for (double t : fj.tail) s.rhs_tail += t;
    s.displayed = to_double(Cx<T>(cexp(-h * logq) + displayed_combination<T>(data, q, h, terms)));
    s.difference = static_cast<double>(cabs(Cx<T>(mb.value.value - rhs)));
    s.ok = s.difference < tol;
    return s;
}

template <class T = double>
ConnectionReport connection_report(const std::string& kind, const FJRWData& data, const std::vector<std::pair<std::complex<double>, std::complex<double>>>& points, double tol,
                                   long terms = 60, ContourOptions opt = {})
{
    require_fano(data);
    for (long long wi : data.w)
        if (data.dprime % wi != 0)
            throw Error("OutsideRegime", "weight " + std::to_string(wi) + " does not divide d'=" + std::to_string(data.dprime));
    double lm = family_log_ratio(data);
    ConnectionReport r;
    r.kind = kind;
    r.data = data;
    r.tol = tol;
    r.ok = true;
    for (const auto& [q, h] : points) {
        if (std::abs(q) * 0.8 <= std::exp(lm))
            throw Error("OutsideDisk", "connection samples must satisfy |q| > " + std::to_string(std::exp(lm) / 0.8));
        auto s = connection_sample<T>(data, Cx<T>(T(q.real()), T(q.imag())), Cx<T>(T(h.real()), T(h.imag())), tol, terms, opt);
        r.max_difference = std::max(r.max_difference, s.difference);
        r.ok = r.ok && s.ok;
        r.samples.push_back(s);
    }
    return r;
}

template <class T = double>
ConnectionReport connection_check(const std::string& kind, const FJRWData& data, const std::vector<std::pair<std::complex<double>, std::complex<double>>>& points, double tol,
                                  long terms = 60, ContourOptions opt = {})
{
    auto r = connection_report<T>(kind, data, points, tol, terms, opt);
    if (!r.ok) {
        std::ostringstream os;
        os.precision(16);
        for (const auto& s : r.samples)
            if (!s.ok) {
                os << "at q=" << s.q << ", h=" << s.h << ": contour " << s.lhs << " vs combination " << s.rhs << " (|diff| " << s.difference << " >= tol " << tol << ")";
                break;
            }
        throw Error("ToleranceExceeded", os.str());
    }
    return r;
}

inline std::vector<std::pair<std::complex<double>, std::complex<double>>> default_connection_points(double q)
{
    return {{q, {0.03, 0}}, {q, {0.05, 0.02}}, {q, {0.08, -0.01}}};
}

// small-circle residue of Gamma(1 + d h + d s) at s = -h - m/d

struct ResidueCheck {
    long long d = 0, m = 0;
    std::complex<double> numeric, closed_form, half_radius;
    double difference = 0, radius_change = 0;
    bool ok = false;
};

template <class T>
Cx<T> circle_residue(long long d, long long m, const T& radius, int points)
{
    const T pi = pi_v<T>();
    Cx<T> sum(0);
    for (int j = 0; j < points; ++j) {
        Cx<T> e = cexp(Cx<T>(0, T(2) * pi * T(j) / T(points)));
        Cx<T> ds = radius * e;
        sum += cgamma(Cx<T>(T(1 - m)) + T(d) * ds) * ds;
    }
    return sum / T(points);
}

inline ResidueCheck residue_check(long long m, long long d = 3, double tol = 1e-9)
{
    if (m < 1) throw Error("InvalidArgument", "m must be positive");
    if (d < 1) throw Error("InvalidArgument", "d must be positive");
    ResidueCheck r;
    r.d = d;
    r.m = m;
    double radius = 0.25 / d;
    r.numeric = circle_residue<double>(d, m, radius, 64);
    r.half_radius = circle_residue<double>(d, m, radius / 2, 64);
    double g = std::tgamma(static_cast<double>(m));
    r.closed_form = -(m % 2 ? -1.0 : 1.0) / (d * g);
    r.difference = std::abs(r.numeric - r.closed_form);
    r.radius_change = std::abs(r.numeric - r.half_radius);
    r.ok = r.difference < tol && r.radius_change < tol;
    return r;
}

// vanishing of the continued transition family

struct TransitionFamily {
    std::string name;
    std::vector<Q> exponents;
    bool positive = true;
};

struct TransitionReport {
    std::vector<long long> w;
    long long c = 0;
    std::complex<double> h;
    std::vector<TransitionFamily> families;
    bool audit_ok = false;
    std::vector<double> y;
    std::vector<std::complex<double>> values;
    std::vector<std::complex<double>> prefactor;
    std::vector<std::complex<double>> contour;
    std::vector<double> ratios;
    bool decay_ok = false;
    bool ok() const { return audit_ok && decay_ok; }
};

inline TransitionReport transition_limit_check(const std::vector<long long>& w, std::complex<double> h = {0.05, 0}, long terms = 60, int audit_terms = 12)
{
    long long sw = 0;
    for (long long wi : w) {
        if (wi <= 0) throw Error("InvalidArgument", "weights must be positive");
        sw += wi;
    }
    if (sw < 2) throw Error("InvalidArgument", "the weights must sum to at least 2");
    TransitionReport r;
    r.w = w;
    r.c = sw - 1;
    r.h = h;
    FJRWData data;
    data.w = w;
    data.d = r.c;
    data.dprime = 1;
    for (long long wi : w) data.charges.push_back(Q(wi, r.c));

    // q = y^{-c}: q^{-m/c} = y^m and q^{-1-l} = y^{c(1+l)}
    TransitionFamily fm{"m", {}, true}, fl{"l", {}, true};
    for (long long m = 1; static_cast<int>(fm.exponents.size()) < audit_terms && m < 50 * audit_terms; ++m) {
        if (m % r.c == 0) continue;
        bool zero = false;
        family_rest_log<double>(data, Cx<double>(-static_cast<double>(m) / r.c), zero);
        if (zero) continue;
        Q e(m);
        fm.exponents.push_back(e);
        if (e <= 0) fm.positive = false;
    }
    for (long long l = 0; l < audit_terms; ++l) {
        Q e(r.c * (1 + l));
        fl.exponents.push_back(e);
        if (e <= 0) fl.positive = false;
    }
    r.families = {fm, fl};
    r.audit_ok = fm.positive && fl.positive;

    r.y = {1e-1, 1e-2, 1e-3};
    for (double y : r.y) {
        Cx<double> q(std::pow(y, -static_cast<double>(r.c)), 0);
        auto v = continued_series<double>(data, q, h, terms);
        r.values.push_back(v.m_part + v.l_part);
        r.prefactor.push_back(v.constant);
        try {
            auto mb = mellin_barnes<double>(fjrw_family_spec(data), q, h);
            r.contour.push_back(mb.value.value - v.constant);
        } catch (const Error&) {
            r.contour.push_back({std::nan(""), std::nan("")});
        }
    }
    r.decay_ok = true;
    for (std::size_t i = 1; i < r.values.size(); ++i) {
        double a = std::abs(r.values[i - 1]), b = std::abs(r.values[i]);
        double ratio = b == 0 ? std::numeric_limits<double>::infinity() : a / b;
        r.ratios.push_back(ratio);
        if (!(ratio >= 8)) r.decay_ok = false;
    }
    return r;
}

} // namespace wallcross

#endif
