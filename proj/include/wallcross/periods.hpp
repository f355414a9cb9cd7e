#ifndef WALLCROSS_PERIODS_HPP
#define WALLCROSS_PERIODS_HPP

#include "rational.hpp"

#include <map>

namespace wallcross {

enum class PeriodKind { P3K3, Q4K3, XBlowupK3 };

inline PeriodKind parse_period_kind(const std::string& s)
{
    if (s == "p3_k3") return PeriodKind::P3K3;
    if (s == "q4_k3") return PeriodKind::Q4K3;
    if (s == "x_blowup_k3") return PeriodKind::XBlowupK3;
    throw Error("InvalidArgument", "unknown period spec " + s);
}

inline std::string to_string(PeriodKind k)
{
    switch (k) {
    case PeriodKind::P3K3: return "p3_k3";
    case PeriodKind::Q4K3: return "q4_k3";
    case PeriodKind::XBlowupK3: return "x_blowup_k3";
    }
    return "?";
}

class Factorials {
public:
    const Z& operator()(long long n)
    {
        if (n < 0) throw Error("InvalidArgument", "negative factorial");
        if (cache_.empty()) cache_.push_back(1);
        while (static_cast<long long>(cache_.size()) <= n) cache_.push_back(cache_.back() * Z(static_cast<long long>(cache_.size())));
        return cache_[n];
    }

private:
    std::vector<Z> cache_;
};

// f(t) = sum c_n t^n; for p3_k3 only exponents 4d are nonzero
inline std::vector<Z> p3_k3(long long bound_d, Factorials& f)
{
    std::vector<Z> c(static_cast<std::size_t>(4 * bound_d + 1), Z(0));
    for (long long d = 0; d <= bound_d; ++d) {
        Z den = f(d) * f(d) * f(d) * f(d);
        c[4 * d] = f(4 * d) / den;
    }
    return c;
}

inline std::vector<Z> q4_k3(long long bound, Factorials& f)
{
    std::vector<Z> c;
    for (long long d = 0; d <= bound; ++d) {
        Z den = f(d) * f(d) * f(d) * f(d);
        c.push_back(f(4 * d) / den);
    }
    return c;
}

// c[d1][d2] = (4 d1)! (d1 + d2)! / ((d1!)^5 d2!)
inline std::vector<std::vector<Z>> x_blowup_k3(long long bound, Factorials& f)
{
    std::vector<std::vector<Z>> c(static_cast<std::size_t>(bound + 1));
    for (long long d1 = 0; d1 <= bound; ++d1)
        for (long long d2 = 0; d2 <= bound; ++d2) {
            Z den = f(d1) * f(d1) * f(d1) * f(d1) * f(d1) * f(d2);
            Z num = f(4 * d1) * f(d1 + d2);
            if (num % den != 0) throw Error("NotInteger", "period coefficient is not integral");
            c[d1].push_back(num / den);
        }
    return c;
}

struct PeriodRelations {
    bool q4_matches_p3 = true;
    bool x_restricts_to_p3 = true;
    std::vector<std::string> mismatches;
    bool ok() const { return q4_matches_p3 && x_restricts_to_p3; }
};

inline PeriodRelations check_period_relations(const std::vector<Z>& p3, const std::vector<Z>& q4, const std::vector<std::vector<Z>>& x)
{
    PeriodRelations r;
    for (std::size_t d = 0; d < q4.size(); ++d) {
        if (4 * d >= p3.size() || p3[4 * d] != q4[d]) {
            r.q4_matches_p3 = false;
            r.mismatches.push_back("q4_k3 at d=" + std::to_string(d));
        }
        if (d >= x.size() || x[d].empty() || x[d][0] != p3.at(4 * d)) {
            r.x_restricts_to_p3 = false;
            r.mismatches.push_back("x_blowup_k3 at (" + std::to_string(d) + ",0)");
        }
    }
    for (std::size_t n = 0; n < p3.size(); ++n)
        if (n % 4 != 0 && p3[n] != 0) {
            r.q4_matches_p3 = false;
            r.mismatches.push_back("p3_k3 has a nonzero coefficient at t^" + std::to_string(n));
        }
    return r;
}

inline PeriodRelations period_relations(long long bound)
{
    Factorials f;
    return check_period_relations(p3_k3(bound, f), q4_k3(bound, f), x_blowup_k3(bound, f));
}

} // namespace wallcross

#endif
