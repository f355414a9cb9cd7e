#ifndef WALLCROSS_FM_HPP
#define WALLCROSS_FM_HPP

#include "linalg.hpp"

#include <set>

namespace wallcross {

// a . t >= b
struct Ineq {
    QVec a;
    Q b;
};

namespace detail {

inline void normalize(Ineq& q)
{
    Q s = 0;
    for (auto& x : q.a)
        if (x != 0) {
            s = x < 0 ? Q(-x) : x;
            break;
        }
    if (s == 0) return;
    for (auto& x : q.a) x /= s;
    q.b /= s;
}

inline std::string key(const Ineq& q)
{
    std::string k;
    for (auto& x : q.a) k += x.str() + ",";
    return k + "|" + q.b.str();
}

} // namespace detail

// Fourier-Motzkin elimination; true iff the system has a rational solution
inline bool fm_feasible(std::vector<Ineq> sys, std::size_t nvars)
{
    for (std::size_t j = 0; j < nvars; ++j) {
        std::vector<Ineq> pos, neg, rest;
        for (auto& q : sys) {
            if (q.a[j] > 0) pos.push_back(q);
            else if (q.a[j] < 0) neg.push_back(q);
            else rest.push_back(q);
        }
        for (auto& p : pos)
            for (auto& n : neg) {
                Ineq c;
                Q fp = 1 / p.a[j], fn = -1 / n.a[j];
                c.a.resize(nvars);
                for (std::size_t k = 0; k < nvars; ++k) c.a[k] = p.a[k] * fp + n.a[k] * fn;
                c.a[j] = 0;
                c.b = p.b * fp + n.b * fn;
                rest.push_back(std::move(c));
            }
        std::set<std::string> seen;
        sys.clear();
        for (auto& q : rest) {
            detail::normalize(q);
            if (is_zero(q.a)) {
                if (q.b > 0) return false;
                continue;
            }
            if (seen.insert(detail::key(q)).second) sys.push_back(q);
        }
    }
    for (auto& q : sys)
        if (q.b > 0) return false;
    return true;
}

// exists x with a x = 0 and x_i >= lower_i
inline bool homogeneous_feasible(const QMat& a, std::size_t cols, const QVec& lower)
{
    QMat ns = nullspace(a, cols);
    if (ns.empty()) {
        for (auto& l : lower)
            if (l > 0) return false;
        return true;
    }
    std::size_t k = ns.size();
    std::vector<Ineq> sys;
    for (std::size_t i = 0; i < cols; ++i) {
        Ineq q;
        q.a.resize(k);
        for (std::size_t t = 0; t < k; ++t) q.a[t] = ns[t][i];
        q.b = lower[i];
        sys.push_back(std::move(q));
    }
    return fm_feasible(std::move(sys), k);
}

// omega = sum_i a_i v_i with every a_i > 0 (strict) or >= 0
inline bool in_cone(const std::vector<QVec>& gens, const QVec& omega, bool strict)
{
    std::size_t r = omega.size();
    if (gens.empty()) return is_zero(omega);
    std::size_t cols = gens.size() + 1;
    QMat a(r, QVec(cols, Q(0)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j) a[i][j] = gens[j][i];
        a[i][gens.size()] = -omega[i];
    }
    QVec lower(cols, Q(strict ? 1 : 0));
    lower.back() = 1;
    return homogeneous_feasible(a, cols, lower);
}

} // namespace wallcross

#endif
