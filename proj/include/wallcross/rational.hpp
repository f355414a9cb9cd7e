#ifndef WALLCROSS_RATIONAL_HPP
#define WALLCROSS_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wallcross {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;
using QVec = std::vector<Q>;
using ZVec = std::vector<Z>;
using QMat = std::vector<QVec>;

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Z num(const Q& q) { return boost::multiprecision::numerator(q); }
inline Z den(const Q& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Q& q) { return den(q) == 1; }

inline Z floor_q(const Q& q)
{
    Z n = num(q), d = den(q);
    Z r = n / d;
    if (n < 0 && r * d != n) r -= 1;
    return r;
}

// fractional part in [0,1)
inline Q frac(const Q& q) { return q - Q(floor_q(q)); }

inline long long to_ll(const Q& q)
{
    if (!is_integer(q)) throw Error("NotInteger", "expected an integer, got " + q.str());
    return num(q).convert_to<long long>();
}

inline std::string to_string(const Q& q)
{
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Q parse_q(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Q(Z(s));
        Z n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw Error("ParseError", "zero denominator in " + s);
        return Q(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("ParseError", "not a rational: " + s);
    }
}

inline Q dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw Error("DimensionMismatch", "dot of vectors of different length");
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec to_qvec(const std::vector<long long>& v)
{
    QVec r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(x);
    return r;
}

inline Z gcd_z(Z a, Z b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Z t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Z lcm_z(const Z& a, const Z& b)
{
    if (a == 0 || b == 0) return 0;
    Z g = gcd_z(a, b);
    Z r = a / g * b;
    return r < 0 ? -r : r;
}

// scale a rational vector to a primitive integer vector with the same direction
inline QVec primitive(const QVec& v)
{
    Z l = 1;
    for (auto& x : v) l = lcm_z(l, den(x));
    Z g = 0;
    for (auto& x : v) g = gcd_z(g, num(x * Q(l)));
    if (g == 0) return v;
    QVec r;
    for (auto& x : v) r.push_back(x * Q(l) / Q(g));
    return r;
}

inline bool is_zero(const QVec& v)
{
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

inline std::string to_string(const QVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

} // namespace wallcross

#endif
