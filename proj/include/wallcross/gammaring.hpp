#ifndef WALLCROSS_GAMMARING_HPP
#define WALLCROSS_GAMMARING_HPP

#include "rational.hpp"

#include <map>
#include <tuple>

namespace wallcross {

// polynomial over Q in gamma (weight 1) and zeta_k (weight k), truncated above weight K
// exponent vector: [gamma, zeta_2, ..., zeta_K]
class Scalar {
public:
    using Exps = std::vector<int>;

    Scalar() = default;
    explicit Scalar(int K) : K_(K) {}
    Scalar(int K, const Q& c) : K_(K)
    {
        if (c != 0) terms_[zero_exps()] = c;
    }

    static Scalar gamma(int K)
    {
        Scalar s(K);
        if (K >= 1) {
            Exps e = s.zero_exps();
            e[0] = 1;
            s.terms_[e] = 1;
        }
        return s;
    }
    static Scalar zeta(int k, int K)
    {
        if (k < 2) throw Error("InvalidArgument", "zeta index must be at least 2");
        Scalar s(K);
        if (k <= K) {
            Exps e = s.zero_exps();
            e[k - 1] = 1;
            s.terms_[e] = 1;
        }
        return s;
    }

    int K() const { return K_; }
    const std::map<Exps, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Q constant() const
    {
        auto it = terms_.find(zero_exps());
        return it == terms_.end() ? Q(0) : it->second;
    }

    Q coeff(const Exps& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Q(0) : it->second;
    }

    static int weight(const Exps& e)
    {
        int w = 0;
        for (std::size_t j = 0; j < e.size(); ++j) w += e[j] * static_cast<int>(j + 1);
        return w;
    }

    Scalar& operator+=(const Scalar& o)
    {
        align(o);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        align(o);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Scalar operator+(const Scalar& o) const
    {
        Scalar r = *this;
        r += o;
        return r;
    }
    Scalar operator-(const Scalar& o) const
    {
        Scalar r = *this;
        r -= o;
        return r;
    }
    Scalar operator-() const
    {
        Scalar r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    Scalar operator*(const Scalar& o) const
    {
        int K = std::max(K_, o.K_);
        Scalar r(K);
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) {
                Exps e(static_cast<std::size_t>(K), 0);
                for (std::size_t j = 0; j < e1.size(); ++j) e[j] += e1[j];
                for (std::size_t j = 0; j < e2.size(); ++j) e[j] += e2[j];
                if (weight(e) > K) continue;
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    Scalar operator*(const Q& q) const
    {
        Scalar r(K_);
        if (q == 0) return r;
        for (auto& [e, c] : terms_) r.terms_[e] = c * q;
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // requires a nonzero weight-zero part
    Scalar inverse() const
    {
        Q c0 = constant();
        if (c0 == 0) throw Error("NonInvertible", "scalar has no constant term");
        Scalar u = *this * (1 / c0) - Scalar(K_, Q(1));
        Scalar r(K_, Q(1)), p(K_, Q(1));
        for (int k = 1; k <= K_; ++k) {
            p = p * (-u);
            r += p;
        }
        return r * (1 / c0);
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + to_string(c) + ")";
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (!e[j]) continue;
                s += j == 0 ? "*g" : "*z" + std::to_string(j + 1);
                if (e[j] > 1) s += "^" + std::to_string(e[j]);
            }
        }
        return s;
    }

private:
    int K_ = 0;
    std::map<Exps, Q> terms_;

    Exps zero_exps() const { return Exps(static_cast<std::size_t>(K_), 0); }
    void align(const Scalar& o)
    {
        if (o.K_ > K_) {
            std::map<Exps, Q> t;
            for (auto& [e, c] : terms_) {
                Exps e2 = e;
                e2.resize(static_cast<std::size_t>(o.K_), 0);
                t[e2] = c;
            }
            terms_ = std::move(t);
            K_ = o.K_;
        }
    }
    void add_term(Exps e, const Q& c)
    {
        if (c == 0) return;
        e.resize(static_cast<std::size_t>(K_), 0);
        if (weight(e) > K_) return;
        auto& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }
};

// univariate truncated series with Scalar coefficients
using Series = std::vector<Scalar>;

inline Series series_one(int N, int K)
{
    Series s(static_cast<std::size_t>(N + 1), Scalar(K));
    s[0] = Scalar(K, Q(1));
    return s;
}

inline Series series_mul(const Series& a, const Series& b)
{
    std::size_t n = std::min(a.size(), b.size());
    int K = a.empty() ? 0 : a[0].K();
    Series r(n, Scalar(K));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] += a[i] * b[j];
    return r;
}

// (t + c)
inline Series series_linear(const Q& c, int N, int K)
{
    Series s(static_cast<std::size_t>(N + 1), Scalar(K));
    s[0] = Scalar(K, c);
    if (N >= 1) s[1] = Scalar(K, Q(1));
    return s;
}

inline Series series_inverse(const Series& a)
{
    std::size_t n = a.size();
    int K = a.empty() ? 0 : a[0].K();
    Series r(n, Scalar(K));
    Scalar inv0 = a[0].inverse();
    r[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Scalar acc(K);
        for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
        r[k] = -(acc * inv0);
    }
    return r;
}

inline Series series_exp(const Series& l)
{
    // l[0] must vanish; n E_n = sum_k k l_k E_{n-k}
    std::size_t n = l.size();
    int K = l.empty() ? 0 : l[0].K();
    if (!l[0].is_zero()) throw Error("InvalidArgument", "series_exp needs a vanishing constant term");
    Series e(n, Scalar(K));
    e[0] = Scalar(K, Q(1));
    for (std::size_t k = 1; k < n; ++k) {
        Scalar acc(K);
        for (std::size_t j = 1; j <= k; ++j) acc += (l[j] * e[k - j]) * Q(static_cast<long long>(j));
        e[k] = acc * Q(1, static_cast<long long>(k));
    }
    return e;
}

// log Gamma(1+t) = -gamma t + sum_{k>=2} (-1)^k zeta_k t^k / k
inline Series log_gamma_series(int N, int K)
{
    Series l(static_cast<std::size_t>(N + 1), Scalar(K));
    if (N >= 1) l[1] = -Scalar::gamma(K);
    for (int k = 2; k <= N; ++k) l[k] = Scalar::zeta(k, K) * Q((k % 2 ? -1 : 1), k);
    return l;
}

inline Series gamma_series(int N, int K) { return series_exp(log_gamma_series(N, K)); }

inline Series rgamma_series(int N, int K)
{
    Series l = log_gamma_series(N, K);
    for (auto& c : l) c = -c;
    return series_exp(l);
}

struct GammaShift {
    Series unit;
    int t_power = 0;   // -1 when a bare factor 1/t remains uninverted
};

// Gamma(1+t+n)
inline GammaShift gamma_shift(long long n, int N, int K)
{
    GammaShift g;
    g.unit = gamma_series(N, K);
    if (n >= 0) {
        for (long long j = 1; j <= n; ++j) g.unit = series_mul(g.unit, series_linear(Q(j), N, K));
        return g;
    }
    Series den = series_one(N, K);
    for (long long j = n + 1; j <= -1; ++j) den = series_mul(den, series_linear(Q(j), N, K));
    g.unit = series_mul(g.unit, series_inverse(den));
    g.t_power = -1;
    return g;
}

// 1/Gamma(1+t+n); carries a factor t for n <= -1
inline Series gamma_shift_recip(long long n, int N, int K)
{
    Series r = rgamma_series(N, K);
    if (n >= 0) {
        Series den = series_one(N, K);
        for (long long j = 1; j <= n; ++j) den = series_mul(den, series_linear(Q(j), N, K));
        return series_mul(r, series_inverse(den));
    }
    Series num = series_linear(Q(0), N, K);
    for (long long j = n + 1; j <= -1; ++j) num = series_mul(num, series_linear(Q(j), N, K));
    return series_mul(r, num);
}

// key of a NilpotentPoly term
struct Mono {
    std::vector<int> exps;
    int z2 = 0;     // twice the power of z
    int tau = 0;
    int logz = 0;

    int degree() const
    {
        int d = 0;
        for (int e : exps) d += e;
        return d;
    }
    bool operator<(const Mono& o) const { return std::tie(exps, z2, tau, logz) < std::tie(o.exps, o.z2, o.tau, o.logz); }
    bool operator==(const Mono& o) const { return std::tie(exps, z2, tau, logz) == std::tie(o.exps, o.z2, o.tau, o.logz); }
};

class NilpotentPoly {
public:
    NilpotentPoly() = default;
    NilpotentPoly(int nsym, int N, int K) : nsym_(nsym), N_(N), K_(K) {}

    static NilpotentPoly constant(int nsym, int N, int K, const Q& c)
    {
        NilpotentPoly p(nsym, N, K);
        if (c != 0) p.terms_[p.unit_mono()] = Scalar(K, c);
        return p;
    }
    static NilpotentPoly one(int nsym, int N, int K) { return constant(nsym, N, K, Q(1)); }
    static NilpotentPoly symbol(int nsym, int N, int K, int i)
    {
        NilpotentPoly p(nsym, N, K);
        if (N >= 1) {
            Mono m = p.unit_mono();
            m.exps.at(i) = 1;
            p.terms_[m] = Scalar(K, Q(1));
        }
        return p;
    }
    static NilpotentPoly linear(int nsym, int N, int K, const QVec& coeffs)
    {
        NilpotentPoly p(nsym, N, K);
        for (int i = 0; i < nsym; ++i)
            if (coeffs.at(i) != 0) p += symbol(nsym, N, K, i) * coeffs[i];
        return p;
    }

    int nsym() const { return nsym_; }
    int N() const { return N_; }
    int K() const { return K_; }
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Mono m, const Scalar& c)
    {
        if (c.is_zero() || m.degree() > N_) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    NilpotentPoly& operator+=(const NilpotentPoly& o)
    {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    NilpotentPoly& operator-=(const NilpotentPoly& o)
    {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    NilpotentPoly operator+(const NilpotentPoly& o) const
    {
        NilpotentPoly r = *this;
        r += o;
        return r;
    }
    NilpotentPoly operator-(const NilpotentPoly& o) const
    {
        NilpotentPoly r = *this;
        r -= o;
        return r;
    }
    NilpotentPoly operator-() const { return *this * Q(-1); }
    NilpotentPoly operator*(const NilpotentPoly& o) const
    {
        check(o);
        NilpotentPoly r(nsym_, N_, K_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) {
                if (m1.degree() + m2.degree() > N_) continue;
                Mono m;
                m.exps.resize(static_cast<std::size_t>(nsym_));
                for (int i = 0; i < nsym_; ++i) m.exps[i] = m1.exps[i] + m2.exps[i];
                m.z2 = m1.z2 + m2.z2;
                m.tau = m1.tau + m2.tau;
                m.logz = m1.logz + m2.logz;
                r.add_term(std::move(m), c1 * c2);
            }
        return r;
    }
    NilpotentPoly& operator*=(const NilpotentPoly& o) { return *this = *this * o; }
    NilpotentPoly operator*(const Q& q) const
    {
        NilpotentPoly r(nsym_, N_, K_);
        if (q == 0) return r;
        for (auto& [m, c] : terms_) r.terms_[m] = c * q;
        return r;
    }
    NilpotentPoly operator*(const Scalar& s) const
    {
        NilpotentPoly r(nsym_, N_, K_);
        for (auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    // multiply by z^{z2/2} tau^t (log z)^l
    NilpotentPoly shifted(int z2, int t, int l = 0) const
    {
        NilpotentPoly r(nsym_, N_, K_);
        for (auto& [m, c] : terms_) {
            Mono m2 = m;
            m2.z2 += z2;
            m2.tau += t;
            m2.logz += l;
            r.terms_[m2] = c;
        }
        return r;
    }

    // apply a per-term rule to the z/tau exponents
    template <class F>
    NilpotentPoly map_monos(F f) const
    {
        NilpotentPoly r(nsym_, N_, K_);
        for (auto& [m, c] : terms_) {
            Mono m2 = m;
            f(m2);
            r.add_term(m2, c);
        }
        return r;
    }

    bool operator==(const NilpotentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const NilpotentPoly& o) const { return !(*this == o); }

    Scalar extract(const Mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(K_) : it->second;
    }

    Mono unit_mono() const
    {
        Mono m;
        m.exps.assign(static_cast<std::size_t>(nsym_), 0);
        return m;
    }

    // symbol i -> images[i], a linear form over a target universe of target_nsym symbols
    NilpotentPoly substitute(const std::vector<QVec>& images, int target_nsym) const
    {
        if (static_cast<int>(images.size()) != nsym_) throw Error("MissingPhi", "substitution must give an image for every symbol");
        std::vector<NilpotentPoly> lin;
        for (auto& img : images) lin.push_back(linear(target_nsym, N_, K_, img));
        NilpotentPoly r(target_nsym, N_, K_);
        std::map<std::pair<int, int>, NilpotentPoly> pw;
        auto power = [&](int i, int e) -> const NilpotentPoly& {
            auto key = std::make_pair(i, e);
            auto it = pw.find(key);
            if (it != pw.end()) return it->second;
            NilpotentPoly p = one(target_nsym, N_, K_);
            for (int k = 0; k < e; ++k) p = p * lin[i];
            return pw.emplace(key, std::move(p)).first->second;
        };
        for (auto& [m, c] : terms_) {
            NilpotentPoly t = one(target_nsym, N_, K_);
            for (int i = 0; i < nsym_; ++i)
                if (m.exps[i]) t = t * power(i, m.exps[i]);
            t = t.shifted(m.z2, m.tau, m.logz) * c;
            r += t;
        }
        return r;
    }

    std::string str(const std::vector<std::string>& names = {}) const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "[" + c.str() + "]";
            for (int i = 0; i < nsym_; ++i)
                if (m.exps[i]) s += "*" + (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i)) + "^" + std::to_string(m.exps[i]);
            if (m.z2) s += "*z^(" + std::to_string(m.z2) + "/2)";
            if (m.tau) s += "*tau^" + std::to_string(m.tau);
            if (m.logz) s += "*logz^" + std::to_string(m.logz);
        }
        return s;
    }

private:
    int nsym_ = 0, N_ = 0, K_ = 0;
    std::map<Mono, Scalar> terms_;

    void check(const NilpotentPoly& o) const
    {
        if (o.nsym_ != nsym_ || o.N_ != N_) throw Error("DimensionMismatch", "nilpotent polynomials live in different universes");
    }
};

// f(t) with t -> (linear form) * tau^tau_per_degree * z^{z2_per_degree/2}
inline NilpotentPoly compose(const Series& f, const QVec& form, int nsym, int N, int K, int tau_per_degree = 0, int z2_per_degree = 0)
{
    NilpotentPoly lin = NilpotentPoly::linear(nsym, N, K, form).shifted(z2_per_degree, tau_per_degree);
    NilpotentPoly r(nsym, N, K), p = NilpotentPoly::one(nsym, N, K);
    bool zero_form = is_zero(form);
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k > 0) {
            if (zero_form) break;
            p = p * lin;
        }
        if (!f[k].is_zero()) r += p * f[k];
    }
    return r;
}

inline NilpotentPoly compose_shift(const GammaShift& g, const QVec& form, int nsym, int N, int K, int tau_per_degree = 0)
{
    if (g.t_power != 0) throw Error("NonInvertible", "bare divisor factor cannot be inverted");
    return compose(g.unit, form, nsym, N, K, tau_per_degree);
}

} // namespace wallcross

#endif
