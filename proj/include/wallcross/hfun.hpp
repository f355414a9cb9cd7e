#ifndef WALLCROSS_HFUN_HPP
#define WALLCROSS_HFUN_HPP

#include "gammaring.hpp"
#include "gitdata.hpp"

#include <numeric>

namespace wallcross {

struct PairConfig {
    std::optional<std::vector<int>> relative;   // toric relative divisors I
    std::vector<QVec> ci;                       // complete-intersection bundles
    std::vector<QVec> rel_bundles;              // relative divisors cut out by bundle sections
};

struct PairData {
    GitData git;
    QVec omega;
    std::optional<QVec> omega_other;            // the adjacent chamber, when the pair belongs to a wall
    std::vector<QVec> basis;
    std::vector<std::string> basis_names;
    PairConfig config;
    std::vector<int> zero_vars;                 // y-variables specialized to zero
    int N = -1;
    int K = -1;
};

struct ResolvedPair {
    PairData data;
    AnticoneSet anticones;
    std::optional<WallCrossing> wall;
    Subset S = 0, M0 = 0, I = 0, Nset = 0;
    std::vector<QVec> dbar;                     // D_i in symbol coordinates
    std::vector<QVec> ci_bar, rel_bar;
    std::vector<bool> symbol_zero;
    QVec rho;
    int N = 0, K = 0, dim = 0;

    int r() const { return data.git.rank; }
    int nsym() const { return data.git.rank; }
    const std::vector<std::string>& symbols() const { return data.basis_names; }
};

// coordinates of v in the basis p
inline QVec basis_coords(const std::vector<QVec>& p, const QVec& v)
{
    int r = static_cast<int>(p.size());
    QMat a(r, QVec(r));
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j) a[k][j] = p[j][k];
    QVec x;
    if (!solve(a, v, x)) throw Error("InvalidBasis", "vector " + to_string(v) + " is not in the span of the basis");
    return x;
}

inline ResolvedPair resolve(const PairData& pd)
{
    require_valid(pd.git);
    ResolvedPair rp;
    rp.data = pd;
    const GitData& g = pd.git;
    int r = g.rank, m = g.m();
    if (static_cast<int>(pd.basis.size()) != r) throw Error("InvalidBasis", "basis must have rank many vectors");
    if (rank(QMat(pd.basis.begin(), pd.basis.end())) != static_cast<std::size_t>(r)) throw Error("InvalidBasis", "basis is singular");
    if (rp.data.basis_names.empty())
        for (int a = 0; a < r; ++a) rp.data.basis_names.push_back("p" + std::to_string(a + 1));
    if (static_cast<int>(rp.data.basis_names.size()) != r) throw Error("InvalidBasis", "basis names must match the basis");
    rp.anticones = anticones(g, pd.omega);
    rp.S = extended_set(rp.anticones);
    if (pd.omega_other) {
        rp.wall = classify_wall(g, pd.omega, *pd.omega_other);
        rp.M0 = rp.wall->M_zero;
    } else
        rp.M0 = full_set(m);
    Subset moving = rp.wall ? (rp.wall->M_plus | rp.wall->M_minus) : Subset(0);
    if (pd.config.relative)
        rp.I = subset_of(*pd.config.relative);
    else
        rp.I = moving & ~rp.S;
    if ((rp.I & ~full_set(m)) != 0) throw Error("InvalidArgument", "relative divisor index out of range");
    rp.Nset = full_set(m) & ~(rp.I | (rp.S & ~rp.M0));
    rp.symbol_zero.assign(r, false);
    for (int j : members(rp.S)) {
        bool covered = false;
        for (int a = 0; a < r; ++a)
            if (pd.basis[a] == g.D(j)) {
                rp.symbol_zero[a] = true;
                covered = true;
            }
        if (!covered) throw Error("InvalidBasis", "extended character " + g.name(j) + " is not a basis element, so its class cannot be set to zero");
    }
    auto bar = [&](const QVec& v) {
        QVec c = basis_coords(pd.basis, v);
        for (int a = 0; a < r; ++a)
            if (rp.symbol_zero[a]) c[a] = 0;
        return c;
    };
    for (int i = 0; i < m; ++i) rp.dbar.push_back(bar(g.D(i)));
    for (auto& e : pd.config.ci) rp.ci_bar.push_back(bar(e));
    for (auto& v : pd.config.rel_bundles) rp.rel_bar.push_back(bar(v));
    rp.rho.assign(r, Q(0));
    for (int i : members(rp.Nset))
        for (int a = 0; a < r; ++a) rp.rho[a] += rp.dbar[i][a];
    for (auto* list : {&rp.ci_bar, &rp.rel_bar})
        for (auto& v : *list)
            for (int a = 0; a < r; ++a) rp.rho[a] -= v[a];
    rp.dim = m - r - static_cast<int>(pd.config.ci.size());
    rp.N = pd.N >= 0 ? pd.N : std::max(rp.dim, 1);
    rp.K = pd.K >= 0 ? pd.K : rp.N;
    return rp;
}

struct BracketLabel {
    QVec sector;
    QVec tangency;
    bool operator==(const BracketLabel& o) const { return sector == o.sector && tangency == o.tangency; }
    bool operator!=(const BracketLabel& o) const { return !(*this == o); }
};

inline BracketLabel inv_label(const BracketLabel& l)
{
    BracketLabel r;
    for (auto& x : l.sector) r.sector.push_back(x == 0 ? Q(0) : 1 - x);
    for (auto& x : l.tangency) r.tangency.push_back(-x);
    return r;
}

struct SeriesEntry {
    CurveClassSample d;
    BracketLabel label;
    NilpotentPoly coeff;
    std::vector<long long> k;       // extension exponents, empty when unextended
};

struct HSeries {
    std::string kind;
    std::vector<std::string> symbols;
    std::vector<SeriesEntry> entries;
    Q bound = 0;
    int N = 0, K = 0;
};

inline std::vector<CurveClassSample> pair_classes(const ResolvedPair& rp, const Q& bound)
{
    return kset_enumerate(rp.data.git, rp.anticones, rp.data.basis, bound, true);
}

inline QVec tangency_of(const ResolvedPair& rp, const QVec& pairings, const QVec& d)
{
    QVec t;
    for (int i : members(rp.I)) t.push_back(pairings[i]);
    for (auto& v : rp.data.config.rel_bundles) t.push_back(dot(v, d));
    return t;
}

inline long long integral_shift(const Q& n, const std::string& what)
{
    if (!is_integer(n)) throw Error("FractionalShift", what + " has fractional shift " + to_string(n) + "; the coefficient leaves Q[gamma, zeta]");
    return to_ll(n);
}

inline NilpotentPoly h_coefficient(const ResolvedPair& rp, const CurveClassSample& s)
{
    int ns = rp.nsym(), N = rp.N, K = rp.K;
    NilpotentPoly c = NilpotentPoly::one(ns, N, K);
    for (int i : members(rp.Nset)) {
        long long n = integral_shift(s.pairings[i], rp.data.git.name(i));
        c *= compose(gamma_shift_recip(n, N, K), rp.dbar[i], ns, N, K, -1);
    }
    auto bundles = [&](const std::vector<QVec>& chars, const std::vector<QVec>& bars, const char* what) {
        for (std::size_t j = 0; j < chars.size(); ++j) {
            Q n = dot(chars[j], s.d);
            if (n < 0) throw Error("NegativeBundleDegree", std::string(what) + " bundle has degree " + to_string(n) + " on " + to_string(s.d));
            c *= compose_shift(gamma_shift(integral_shift(n, what), N, K), bars[j], ns, N, K, -1);
        }
    };
    bundles(rp.data.config.ci, rp.ci_bar, "complete-intersection");
    bundles(rp.data.config.rel_bundles, rp.rel_bar, "relative");
    return c;
}

// H-series of a toric pair, complete intersection or exchange configuration
inline HSeries h_series(const ResolvedPair& rp, const Q& bound)
{
    HSeries h;
    h.kind = "H";
    h.symbols = rp.symbols();
    h.bound = bound;
    h.N = rp.N;
    h.K = rp.K;
    for (auto& s : pair_classes(rp, bound)) {
        SeriesEntry e;
        e.d = s;
        e.label = {s.sector, tangency_of(rp, s.pairings, s.d)};
        e.coeff = h_coefficient(rp, s);
        h.entries.push_back(std::move(e));
    }
    return h;
}

// (x + a z)^{power} for rational a != 0 or a == 0 with power 1
inline NilpotentPoly linear_z_factor(const QVec& x, const Q& a, int power, int ns, int N, int K)
{
    if (a == 0) {
        if (power != 1) throw Error("NonInvertible", "cannot invert a bare divisor class");
        return NilpotentPoly::linear(ns, N, K, x);
    }
    // a z (1 + x/(a z))
    Series s(static_cast<std::size_t>(N + 1), Scalar(K));
    Q ratio = 1 / a;
    if (power == 1) {
        s[0] = Scalar(K, Q(1));
        if (N >= 1) s[1] = Scalar(K, ratio);
        return compose(s, x, ns, N, K, 0, -2).shifted(2, 0) * a;
    }
    Q p = 1;
    for (int j = 0; j <= N; ++j) {
        s[j] = Scalar(K, p);
        p *= -ratio;
    }
    return compose(s, x, ns, N, K, 0, -2).shifted(-2, 0) * (1 / a);
}

// prod_{a<=0,<a>=<c>}(x+az) / prod_{a<=c,<a>=<c>}(x+az)
inline NilpotentPoly ratio_factor(const Q& c, const QVec& x, int ns, int N, int K)
{
    NilpotentPoly r = NilpotentPoly::one(ns, N, K);
    if (c > 0) {
        for (Q a = c; a > 0; a -= 1) r *= linear_z_factor(x, a, -1, ns, N, K);
    } else {
        Q f = frac(c);
        for (Q a = c + 1; a <= 0; a += 1) {
            if (frac(a) != f) continue;
            r *= linear_z_factor(x, a, 1, ns, N, K);
        }
    }
    return r;
}

inline NilpotentPoly bundle_numerator(const Q& n, const QVec& v, int ns, int N, int K)
{
    NilpotentPoly r = NilpotentPoly::one(ns, N, K);
    for (Q a = 1; a <= n; a += 1) r *= linear_z_factor(v, a, 1, ns, N, K);
    return r;
}

inline NilpotentPoly i_coefficient(const ResolvedPair& rp, const CurveClassSample& s)
{
    int ns = rp.nsym(), N = rp.N, K = rp.K;
    NilpotentPoly c = NilpotentPoly::one(ns, N, K).shifted(2, 0);
    for (int i : members(rp.Nset)) c *= ratio_factor(s.pairings[i], rp.dbar[i], ns, N, K);
    for (std::size_t j = 0; j < rp.data.config.ci.size(); ++j) c *= bundle_numerator(dot(rp.data.config.ci[j], s.d), rp.ci_bar[j], ns, N, K);
    for (std::size_t j = 0; j < rp.data.config.rel_bundles.size(); ++j) {
        Q n = dot(rp.data.config.rel_bundles[j], s.d);
        c *= bundle_numerator(n, rp.rel_bar[j], ns, N, K);
        if (n > 0) c *= linear_z_factor(rp.rel_bar[j], n, -1, ns, N, K);
    }
    for (int i : members(rp.I))
        if (s.pairings[i] > 0) c *= linear_z_factor(rp.dbar[i], s.pairings[i], -1, ns, N, K);
    return c;
}

inline BracketLabel i_label(const ResolvedPair& rp, const CurveClassSample& s)
{
    BracketLabel l;
    for (auto& x : s.pairings) l.sector.push_back(frac(-x));
    for (auto& t : tangency_of(rp, s.pairings, s.d)) l.tangency.push_back(-t);
    return l;
}

// coefficients of the I-function with the overall z, without the exponential prefactor
inline HSeries i_series(const ResolvedPair& rp, const Q& bound)
{
    HSeries h;
    h.kind = "I";
    h.symbols = rp.symbols();
    h.bound = bound;
    h.N = rp.N;
    h.K = rp.K;
    for (auto& s : pair_classes(rp, bound)) {
        SeriesEntry e;
        e.d = s;
        e.label = i_label(rp, s);
        e.coeff = i_coefficient(rp, s);
        h.entries.push_back(std::move(e));
    }
    return h;
}

inline std::vector<std::vector<long long>> extension_exponents(std::size_t n, long long total)
{
    std::vector<std::vector<long long>> out;
    std::vector<long long> k(n, 0);
    while (true) {
        long long s = 0;
        for (auto x : k) s += x;
        if (s <= total) out.push_back(k);
        std::size_t i = 0;
        while (i < n && k[i] == total) k[i++] = 0;
        if (i == n) break;
        ++k[i];
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) {
        long long sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        return sa < sb;
    });
    return out;
}

inline Q factorial_q(long long n)
{
    Q f = 1;
    for (long long j = 2; j <= n; ++j) f *= j;
    return f;
}

inline void require_single_bundle(const ResolvedPair& rp)
{
    if (rp.data.config.rel_bundles.size() != 1 || rp.I != 0)
        throw Error("InvalidArgument", "extended series need exactly one relative bundle divisor and no toric relative divisors");
}

// extended I-series split into positive and negative contact parts; entries carry the x-exponents k
inline HSeries extended_i_series(const ResolvedPair& rp, const std::vector<long long>& ext, const Q& bound, long long x_bound)
{
    require_single_bundle(rp);
    for (auto a : ext)
        if (a <= 0) throw Error("InvalidArgument", "extension entries must be positive");
    int ns = rp.nsym(), N = rp.N, K = rp.K;
    const QVec& V = rp.data.config.rel_bundles[0];
    const QVec& v = rp.rel_bar[0];
    HSeries h;
    h.kind = "extended-I";
    h.symbols = rp.symbols();
    h.bound = bound;
    h.N = N;
    h.K = K;
    auto ks = extension_exponents(ext.size(), x_bound);
    for (auto& s : pair_classes(rp, bound)) {
        Q Dd = dot(V, s.d);
        NilpotentPoly base = NilpotentPoly::one(ns, N, K).shifted(2, 0);
        for (int i : members(rp.Nset)) base *= ratio_factor(s.pairings[i], rp.dbar[i], ns, N, K);
        for (std::size_t j = 0; j < rp.data.config.ci.size(); ++j) base *= bundle_numerator(dot(rp.data.config.ci[j], s.d), rp.ci_bar[j], ns, N, K);
        base *= bundle_numerator(Dd, v, ns, N, K);
        for (auto& k : ks) {
            Q ka = 0, kf = 1;
            long long ksum = 0;
            for (std::size_t i = 0; i < k.size(); ++i) {
                ka += Q(k[i] * ext[i]);
                kf *= factorial_q(k[i]);
                ksum += k[i];
            }
            NilpotentPoly c = base.shifted(-2 * static_cast<int>(ksum), 0) * (1 / kf);
            if (ka < Dd) c *= linear_z_factor(v, Dd - ka, -1, ns, N, K);
            SeriesEntry e;
            e.d = s;
            e.k = k;
            for (auto& x : s.pairings) e.label.sector.push_back(frac(-x));
            e.label.tangency = {-Dd + ka};
            e.coeff = std::move(c);
            h.entries.push_back(std::move(e));
        }
    }
    return h;
}

inline HSeries extended_h_series(const ResolvedPair& rp, const std::vector<long long>& ext, const Q& bound, long long x_bound)
{
    require_single_bundle(rp);
    HSeries base = h_series(rp, bound);
    HSeries h;
    h.kind = "extended-H";
    h.symbols = base.symbols;
    h.bound = bound;
    h.N = rp.N;
    h.K = rp.K;
    auto ks = extension_exponents(ext.size(), x_bound);
    for (auto& b : base.entries)
        for (auto& k : ks) {
            Q ka = 0, kf = 1;
            for (std::size_t i = 0; i < k.size(); ++i) {
                ka += Q(k[i] * ext[i]);
                kf *= factorial_q(k[i]);
            }
            SeriesEntry e = b;
            e.k = k;
            e.label.tangency = {b.label.tangency.at(0) - ka};
            e.coeff = b.coeff * (1 / kf);
            h.entries.push_back(std::move(e));
        }
    return h;
}

// Gamma-hat block for sector f and tangency s
inline NilpotentPoly gamma_hat_block(const ResolvedPair& rp, const QVec& sector, const QVec& tangency)
{
    int ns = rp.nsym(), N = rp.N, K = rp.K;
    NilpotentPoly c = NilpotentPoly::one(ns, N, K);
    for (int i : members(rp.Nset)) {
        long long shift = integral_shift(-sector.at(i), "Gamma-hat sector of " + rp.data.git.name(i));
        GammaShift g = gamma_shift(shift, N, K);
        c *= compose_shift(g, rp.dbar[i], ns, N, K);
    }
    Series rg = rgamma_series(N, K);
    for (auto& v : rp.ci_bar) c *= compose(rg, v, ns, N, K);
    for (auto& v : rp.rel_bar) c *= compose(rg, v, ns, N, K);
    std::vector<QVec> rel_classes;
    for (int i : members(rp.I)) rel_classes.push_back(rp.dbar[i]);
    for (auto& v : rp.rel_bar) rel_classes.push_back(v);
    if (tangency.size() != rel_classes.size()) throw Error("DimensionMismatch", "tangency has wrong length");
    for (std::size_t j = 0; j < tangency.size(); ++j)
        if (tangency[j] < 0) {
            // 1/(x - s) = (-1/s) sum (x/s)^k
            Q s = tangency[j];
            Series g(static_cast<std::size_t>(N + 1), Scalar(K));
            Q p = -1 / s;
            for (int k = 0; k <= N; ++k) {
                g[k] = Scalar(K, p);
                p /= s;
            }
            c *= compose(g, rel_classes[j], ns, N, K);
        }
    return c;
}

struct GammaHatClass {
    std::vector<std::pair<BracketLabel, NilpotentPoly>> blocks;
};

inline GammaHatClass gamma_hat(const ResolvedPair& rp, const Q& bound)
{
    GammaHatClass g;
    for (auto& s : pair_classes(rp, bound)) {
        BracketLabel l = i_label(rp, s);
        bool seen = false;
        for (auto& [b, p] : g.blocks)
            if (b == l) seen = true;
        if (!seen) g.blocks.emplace_back(l, gamma_hat_block(rp, l.sector, l.tangency));
    }
    return g;
}

inline NilpotentPoly exp_log_z(const QVec& form, int ns, int N, int K, int sign)
{
    NilpotentPoly x = NilpotentPoly::linear(ns, N, K, form).shifted(0, 0, 1) * Q(sign);
    NilpotentPoly r = NilpotentPoly::one(ns, N, K), p = r;
    for (int k = 1; k <= N; ++k) {
        p = p * x * Q(1, k);
        r += p;
    }
    return r;
}

enum class Mutation { None, GammaHat, Mu, Rho, Inv, Tau };

inline std::string to_string(Mutation m)
{
    switch (m) {
    case Mutation::None: return "none";
    case Mutation::GammaHat: return "gamma-hat";
    case Mutation::Mu: return "mu";
    case Mutation::Rho: return "rho";
    case Mutation::Inv: return "inv";
    case Mutation::Tau: return "tau";
    }
    return "?";
}

struct HIReport {
    bool ok = true;
    std::size_t blocks = 0;
    std::string first_mismatch;
    Mutation mutation = Mutation::None;
};

// right side of the H-I relation for one H entry, as a z^{-1} I coefficient
inline SeriesEntry h_to_i(const ResolvedPair& rp, const SeriesEntry& he, Mutation mut, bool mutate_this)
{
    int ns = rp.nsym(), N = rp.N, K = rp.K;
    NilpotentPoly c = he.coeff.map_monos([&](Mono& m) { m.tau += m.degree() + (mut == Mutation::Tau ? 1 : 0); });
    BracketLabel l = mut == Mutation::Inv ? he.label : inv_label(he.label);
    Q rd = 0;
    for (int a = 0; a < ns; ++a) rd += rp.rho[a] * he.d.u.at(a);
    if (!is_integer(2 * rd)) throw Error("FractionalShift", "grading shift is not a half-integer");
    c = c.shifted(-to_ll(2 * rd), 0) * exp_log_z(rp.rho, ns, N, K, -1);
    if (mut != Mutation::GammaHat) c *= gamma_hat_block(rp, l.sector, l.tangency);
    QVec rho = rp.rho;
    if (mut == Mutation::Rho) rho[0] += 1;
    c *= exp_log_z(rho, ns, N, K, 1);
    Q age = 0;
    for (int i : members(rp.Nset)) age += l.sector.at(i);
    int neg = 0;
    for (auto& t : l.tangency)
        if (t < 0) ++neg;
    // z^{-mu} followed by z^{-dim/2}
    Q shift2 = -2 * age - 2 * neg;
    if (mutate_this) shift2 -= 2;
    c = c.map_monos([](Mono& m) { m.z2 -= 2 * m.degree(); }).shifted(to_ll(shift2), 0);
    SeriesEntry out;
    out.d = he.d;
    out.label = l;
    out.coeff = std::move(c);
    return out;
}

inline HIReport h_i_consistency(const ResolvedPair& rp, const Q& bound, Mutation mut = Mutation::None)
{
    HIReport rep;
    rep.mutation = mut;
    HSeries H = h_series(rp, bound), I = i_series(rp, bound);
    bool mutated = false;
    for (std::size_t k = 0; k < H.entries.size(); ++k) {
        const SeriesEntry& he = H.entries[k];
        bool mutate_this = mut == Mutation::Mu && !mutated && !is_zero(he.d.d);
        if (mutate_this) mutated = true;
        SeriesEntry rhs = h_to_i(rp, he, mut, mutate_this);
        const SeriesEntry& ie = I.entries.at(k);
        NilpotentPoly lhs = ie.coeff.shifted(-2, 0);
        ++rep.blocks;
        if (ie.d.d != he.d.d || rhs.label != ie.label || rhs.coeff != lhs) {
            rep.ok = false;
            if (rep.first_mismatch.empty())
                rep.first_mismatch = "d=" + to_string(he.d.d) + (rhs.label != ie.label ? " label differs" : " coefficient differs");
        }
    }
    return rep;
}

struct CompareOptions {
    std::vector<QVec> phi;                 // image of each + symbol in the - symbols
    std::optional<QMat> class_map;         // d_- = A d_+
    bool use_wall = true;
    int yr = -1;                           // + side specialization variable
};

struct MatchPair {
    std::size_t plus = 0, minus = 0;
};

struct UnmatchedEntry {
    std::size_t index = 0;
    std::string reason;                    // "specialized", "out_of_range", "absent"
};

struct MatchReport {
    std::vector<MatchPair> matched;
    std::vector<UnmatchedEntry> unmatched_plus, unmatched_minus;
    std::vector<std::string> mismatches;
    bool type_ii = false;
    bool specialization_ok = true;
    std::optional<ChangeOfVariables> change;
    bool ok = false;
};

inline bool is_live(const ResolvedPair& rp, const CurveClassSample& s)
{
    for (int a : rp.data.zero_vars)
        if (s.u.at(a) != 0) return false;
    return true;
}

// [lo, hi] of lambda with 0 <= p_a.(t + lambda e) <= bound for all a; empty when lo > hi
inline bool line_meets_box(const std::vector<QVec>& p, const QVec& t, const QVec& e, const Q& bound)
{
    std::optional<Q> lo, hi;
    for (auto& pa : p) {
        Q c0 = dot(pa, t), c1 = e.empty() ? Q(0) : dot(pa, e);
        if (c1 == 0) {
            if (c0 < 0 || c0 > bound) return false;
            continue;
        }
        Q a = (0 - c0) / c1, b = (bound - c0) / c1;
        if (a > b) std::swap(a, b);
        if (!lo || a > *lo) lo = a;
        if (!hi || b < *hi) hi = b;
    }
    return !lo || *lo <= *hi;
}

inline MatchReport compare_sides(const ResolvedPair& rp, const HSeries& hp, const ResolvedPair& rm, const HSeries& hm, const CompareOptions& opt)
{
    MatchReport rep;
    std::optional<WallCrossing> wall;
    if (opt.use_wall) wall = rp.wall;
    int rplus = rp.r(), rminus = rm.r();
    QMat A = opt.class_map.value_or(QMat{});
    if (A.empty()) {
        if (rplus != rminus) throw Error("DimensionMismatch", "a class map is required between lattices of different rank");
        A.assign(rplus, QVec(rplus, Q(0)));
        for (int i = 0; i < rplus; ++i) A[i][i] = 1;
    }
    if (static_cast<int>(opt.phi.size()) != rp.nsym()) throw Error("MissingPhi", "phi must give an image for every + symbol");
    for (auto& img : opt.phi)
        if (static_cast<int>(img.size()) != rm.nsym()) throw Error("MissingPhi", "phi images must live in the - symbols");
    QVec e = wall ? wall->e : QVec{};
    Subset profile = rp.Nset | rm.Nset;
    QVec free_dir = e;
    if (wall)
        for (int k : members(profile))
            if (dot(rm.data.git.D(k), e) != 0) free_dir.clear();
    int yr = opt.yr >= 0 ? opt.yr : rplus - 1;
    rep.type_ii = wall && (wall->type == WallType::II_remove_ray || wall->type == WallType::II_add_ray);
    if (wall && rp.data.basis.size() == rm.data.basis.size()) {
        try {
            rep.change = change_of_variables(rp.data.git, wall->e, rp.data.omega, rm.data.omega, rp.data.basis, rm.data.basis);
        } catch (const Error&) {
        }
    }
    std::vector<bool> minus_hit(hm.entries.size(), false);
    for (std::size_t i = 0; i < hp.entries.size(); ++i) {
        const SeriesEntry& pe = hp.entries[i];
        if (!is_live(rp, pe.d)) {
            rep.unmatched_plus.push_back({i, "specialized"});
            continue;
        }
        QVec t = mat_vec(A, pe.d.d);
        QVec tp = rm.data.git.pairings(t);
        std::vector<std::size_t> cands;
        for (std::size_t j = 0; j < hm.entries.size(); ++j) {
            const SeriesEntry& me = hm.entries[j];
            if (!is_live(rm, me.d)) continue;
            QVec diff(t.size());
            for (std::size_t k = 0; k < t.size(); ++k) diff[k] = me.d.d[k] - t[k];
            if (!wall) {
                if (is_zero(diff)) cands.push_back(j);
                continue;
            }
            if (!is_zero(diff) && rank(QMat{diff, e}) != 1) continue;
            bool same = true;
            for (int k : members(profile))
                if (me.d.pairings[k] != tp[k]) same = false;
            if (same) cands.push_back(j);
        }
        if (cands.empty()) {
            bool reach = line_meets_box(rm.data.basis, t, free_dir, hm.bound);
            rep.unmatched_plus.push_back({i, reach ? "absent" : "out_of_range"});
            continue;
        }
        NilpotentPoly img = pe.coeff.substitute(opt.phi, rm.nsym());
        for (auto j : cands) {
            minus_hit[j] = true;
            rep.matched.push_back({i, j});
            if (img != hm.entries[j].coeff) rep.mismatches.push_back("coefficient of d=" + to_string(pe.d.d) + " differs from d=" + to_string(hm.entries[j].d.d));
        }
    }
    bool square = rplus == rminus;
    for (std::size_t j = 0; j < hm.entries.size(); ++j) {
        if (minus_hit[j]) continue;
        const SeriesEntry& me = hm.entries[j];
        if (!is_live(rm, me.d)) {
            rep.unmatched_minus.push_back({j, "specialized"});
            continue;
        }
        bool reach = true;
        if (square && opt.class_map) {
            QMat Ainv = inverse(A);
            reach = line_meets_box(rp.data.basis, mat_vec(Ainv, me.d.d), free_dir, hp.bound);
        } else if (square)
            reach = line_meets_box(rp.data.basis, me.d.d, free_dir, hp.bound);
        rep.unmatched_minus.push_back({j, reach ? "absent" : "out_of_range"});
    }
    bool minus_ok = true;
    for (auto& u : rep.unmatched_minus)
        if (u.reason == "absent") minus_ok = false;
    bool plus_ok = true;
    if (rep.type_ii) {
        for (auto& u : rep.unmatched_plus)
            if (u.reason != "out_of_range" && hp.entries[u.index].d.u.at(yr) <= 0) rep.specialization_ok = false;
    } else {
        for (auto& u : rep.unmatched_plus)
            if (u.reason == "absent") plus_ok = false;
    }
    rep.ok = rep.mismatches.empty() && minus_ok && plus_ok && rep.specialization_ok;
    return rep;
}

// invert a compare configuration: swap sides and invert phi and the class map
inline CompareOptions inverse_options(const CompareOptions& o, int nsym_minus)
{
    CompareOptions r;
    QMat phi(o.phi.size());
    for (std::size_t a = 0; a < o.phi.size(); ++a) phi[a] = o.phi[a];
    // columns of the inverse of the phi matrix
    QMat M(nsym_minus, QVec(o.phi.size()));
    for (std::size_t a = 0; a < o.phi.size(); ++a)
        for (int b = 0; b < nsym_minus; ++b) M[b][a] = o.phi[a][b];
    QMat Minv = inverse(M);
    for (std::size_t b = 0; b < static_cast<std::size_t>(nsym_minus); ++b) {
        QVec img(o.phi.size());
        for (std::size_t a = 0; a < o.phi.size(); ++a) img[a] = Minv[a][b];
        r.phi.push_back(img);
    }
    if (o.class_map) r.class_map = inverse(*o.class_map);
    r.use_wall = o.use_wall;
    return r;
}

// concave local I-series of K_X for a degree n hypersurface X in P^{N-1}, scalar symbol H
inline HSeries local_i_series(int nvars, int degree, long long bound, int N = 1, int K = 1)
{
    int dprime = nvars - degree;
    if (dprime <= 0) throw Error("NonFano", "the hypersurface is not Fano");
    HSeries h;
    h.kind = "local-I";
    h.symbols = {"H"};
    h.bound = Q(bound);
    h.N = N;
    h.K = K;
    QVec H{Q(1)};
    for (long long d = 0; d <= bound; ++d) {
        NilpotentPoly c = NilpotentPoly::linear(1, N, K, QVec{Q(degree)});
        for (long long k = 1; k <= degree * d; ++k) c *= linear_z_factor(QVec{Q(degree)}, Q(k), 1, 1, N, K);
        for (long long k = 0; k < dprime * d; ++k) c *= linear_z_factor(QVec{Q(dprime)}, Q(k), 1, 1, N, K);
        if ((dprime * d) % 2) c = -c;
        for (long long k = 1; k <= d; ++k)
            for (int j = 0; j < nvars; ++j) c *= linear_z_factor(H, Q(k), -1, 1, N, K);
        SeriesEntry e;
        e.d = CurveClassSample{};
        e.d.d = {Q(d)};
        e.d.u = {Q(d)};
        e.coeff = std::move(c);
        h.entries.push_back(std::move(e));
    }
    return h;
}

// I-series of O(-1) + O(1 - sum w) over P(w), indexed by n in Q>=0 with some n w_j integral
inline HSeries transition_local_series(const std::vector<long long>& w, const Q& bound, int N = 1, int K = 1)
{
    long long sw = 0, l = 1;
    for (auto x : w) {
        if (x <= 0) throw Error("InvalidArgument", "weights must be positive");
        sw += x;
        l = std::lcm(l, x);
    }
    if (sw < 2) throw Error("InvalidArgument", "the weights must sum to at least 2");
    HSeries h;
    h.kind = "transition-local-I";
    h.symbols = {"P"};
    h.bound = bound;
    h.N = N;
    h.K = K;
    for (long long j = 0; Q(j, l) <= bound; ++j) {
        Q n(j, l);
        bool ok = false;
        for (auto x : w)
            if (is_integer(n * x)) ok = true;
        if (!ok) continue;
        NilpotentPoly c = NilpotentPoly::one(1, N, K).shifted(2, 0);
        for (auto x : w) c *= ratio_factor(n * x, QVec{Q(x)}, 1, N, K);
        c *= ratio_factor(-n, QVec{Q(-1)}, 1, N, K);
        c *= ratio_factor(n * (1 - sw), QVec{Q(1 - sw)}, 1, N, K);
        SeriesEntry e;
        e.d.d = {n};
        e.d.u = {n};
        e.d.sector = {frac(-n)};
        e.coeff = std::move(c);
        h.entries.push_back(std::move(e));
    }
    return h;
}

} // namespace wallcross

#endif
