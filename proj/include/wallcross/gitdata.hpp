#ifndef WALLCROSS_GITDATA_HPP
#define WALLCROSS_GITDATA_HPP

#include "fm.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>

namespace wallcross {

using Subset = std::uint64_t;

inline std::vector<int> members(Subset s)
{
    std::vector<int> out;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1) out.push_back(i);
    return out;
}

inline Subset subset_of(const std::vector<int>& idx)
{
    Subset s = 0;
    for (int i : idx) s |= Subset(1) << i;
    return s;
}

inline int popcount(Subset s) { return std::popcount(s); }

struct GitData {
    int rank = 0;
    std::vector<QVec> chars;
    std::vector<std::string> names;

    int m() const { return static_cast<int>(chars.size()); }
    const QVec& D(int i) const { return chars.at(i); }
    std::string name(int i) const { return i < static_cast<int>(names.size()) ? names[i] : "D" + std::to_string(i + 1); }
    QVec pairings(const QVec& d) const
    {
        QVec p;
        p.reserve(chars.size());
        for (auto& c : chars) p.push_back(dot(c, d));
        return p;
    }
};

struct Diagnostics {
    bool valid = true;
    std::size_t char_rank = 0;
    std::vector<int> degenerate_rows;
    bool full_dimensional = false;
    std::vector<std::string> messages;
};

inline Diagnostics validate(const GitData& g)
{
    Diagnostics dg;
    if (g.rank <= 0) {
        dg.valid = false;
        dg.messages.push_back("rank must be positive");
        return dg;
    }
    if (g.m() < g.rank) {
        dg.valid = false;
        dg.messages.push_back("m < rank: no full-dimensional chamber exists");
    }
    if (g.m() > 62) {
        dg.valid = false;
        dg.messages.push_back("at most 62 characters are supported");
    }
    for (int i = 0; i < g.m(); ++i) {
        if (static_cast<int>(g.chars[i].size()) != g.rank) {
            dg.valid = false;
            dg.messages.push_back("character " + std::to_string(i + 1) + " has wrong length");
            return dg;
        }
        for (auto& x : g.chars[i])
            if (!is_integer(x)) {
                dg.valid = false;
                dg.messages.push_back("character " + std::to_string(i + 1) + " is not integral");
            }
        if (is_zero(g.chars[i])) {
            dg.degenerate_rows.push_back(i);
            dg.valid = false;
            dg.messages.push_back("character " + std::to_string(i + 1) + " is zero");
        }
    }
    if (!g.names.empty() && static_cast<int>(g.names.size()) != g.m()) {
        dg.valid = false;
        dg.messages.push_back("names must match the number of characters");
    }
    dg.char_rank = g.chars.empty() ? 0 : rank(g.chars);
    dg.full_dimensional = static_cast<int>(dg.char_rank) == g.rank;
    if (!dg.full_dimensional) {
        dg.valid = false;
        dg.messages.push_back("characters do not span the dual lattice");
    }
    return dg;
}

inline void require_valid(const GitData& g)
{
    auto dg = validate(g);
    if (!dg.valid) throw Error("InvalidGitData", dg.messages.empty() ? "invalid" : dg.messages.front());
}

inline std::vector<QVec> select(const GitData& g, Subset s)
{
    std::vector<QVec> v;
    for (int i : members(s)) v.push_back(g.chars[i]);
    return v;
}

inline bool in_anticone(const GitData& g, Subset s, const QVec& omega) { return in_cone(select(g, s), omega, true); }

inline bool in_nonneg_span(const GitData& g, const QVec& omega) { return in_cone(g.chars, omega, false); }

struct AnticoneSet {
    int m = 0;
    std::vector<Subset> minimal;

    bool contains(Subset s) const
    {
        for (auto mm : minimal)
            if ((mm & s) == mm) return true;
        return false;
    }
    bool operator==(const AnticoneSet& o) const { return m == o.m && minimal == o.minimal; }
};

inline AnticoneSet anticones(const GitData& g, const QVec& omega)
{
    require_valid(g);
    if (static_cast<int>(omega.size()) != g.rank) throw Error("DimensionMismatch", "omega has wrong length");
    if (!in_nonneg_span(g, omega)) throw Error("InfeasibleOmega", "omega " + to_string(omega) + " is outside the nonnegative span");
    AnticoneSet a;
    a.m = g.m();
    int m = g.m();
    // search by size so that supersets of known minimal sets are skipped
    std::vector<std::vector<Subset>> by_size(m + 1);
    Subset full = m == 64 ? ~Subset(0) : ((Subset(1) << m) - 1);
    for (Subset s = 0;; ++s) {
        by_size[popcount(s)].push_back(s);
        if (s == full) break;
    }
    for (int k = 0; k <= m; ++k)
        for (Subset s : by_size[k]) {
            if (a.contains(s)) continue;
            if (in_anticone(g, s, omega)) a.minimal.push_back(s);
        }
    std::sort(a.minimal.begin(), a.minimal.end());
    return a;
}

inline Subset full_set(int m) { return (Subset(1) << m) - 1; }

inline Subset extended_set(const AnticoneSet& a)
{
    Subset s = 0;
    for (int i = 0; i < a.m; ++i) {
        Subset comp = full_set(a.m) & ~(Subset(1) << i);
        if (!a.contains(comp)) s |= Subset(1) << i;
    }
    return s;
}

inline Subset extended_set(const GitData& g, const QVec& omega) { return extended_set(anticones(g, omega)); }

inline bool same_chamber(const GitData& g, const QVec& w1, const QVec& w2) { return anticones(g, w1) == anticones(g, w2); }

// normals of hyperplanes spanned by characters, primitive with first nonzero entry positive
inline std::vector<QVec> candidate_normals(const GitData& g)
{
    std::vector<QVec> out;
    std::set<std::string> seen;
    int r = g.rank, m = g.m();
    auto add = [&](QVec n) {
        n = primitive(n);
        for (auto& x : n)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : n) y = -y;
                break;
            }
        if (seen.insert(to_string(n)).second) out.push_back(n);
    };
    if (r == 1) {
        add(QVec{Q(1)});
        return out;
    }
    std::vector<int> pick(r - 1);
    for (int i = 0; i < r - 1; ++i) pick[i] = i;
    if (m < r - 1) return out;
    while (true) {
        QMat rows;
        for (int i : pick) rows.push_back(g.chars[i]);
        if (static_cast<int>(rank(rows)) == r - 1) {
            QMat ns = nullspace(rows, r);
            add(ns.at(0));
        }
        int k = r - 2;
        while (k >= 0 && pick[k] == m - (r - 1) + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int j = k + 1; j < r - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

inline bool is_generic(const GitData& g, const QVec& omega)
{
    for (auto& n : candidate_normals(g))
        if (dot(n, omega) == 0) return false;
    return true;
}

enum class WallType { I, II_remove_ray, II_add_ray, III };

inline std::string to_string(WallType t)
{
    switch (t) {
    case WallType::I: return "I";
    case WallType::II_remove_ray: return "II_remove_ray";
    case WallType::II_add_ray: return "II_add_ray";
    case WallType::III: return "III";
    }
    return "?";
}

struct WallCrossing {
    QVec e;
    QVec omega_plus, omega_minus, omega_zero;
    Subset M_plus = 0, M_minus = 0, M_zero = 0;
    Subset S_plus = 0, S_minus = 0, S_zero = 0;
    WallType type = WallType::I;
    Q crepancy = 0;
    bool crepant() const { return crepancy == 0; }
};

inline WallType wall_type_from_sets(Subset Sp, Subset Sm, Subset Mp, Subset Mm, Subset M0)
{
    Subset S0 = Sp & Sm;
    if ((S0 & ~M0) != 0) throw Error("Degenerate", "S_0 is not contained in M_0");
    int np = popcount(Mp), nm = popcount(Mm);
    if (Sp == Sm && np >= 2 && nm >= 2) return WallType::I;
    if (nm == 1 && np >= 2 && (Sm & ~Sp) == Mm && (Sp & ~Sm) == 0) return WallType::II_remove_ray;
    if (np == 1 && nm >= 2 && (Sp & ~Sm) == Mp && (Sm & ~Sp) == 0) return WallType::II_add_ray;
    if (np == 1 && nm == 1 && Sp == (S0 | Mp) && Sm == (S0 | Mm) && (S0 & (Mp | Mm)) == 0) return WallType::III;
    throw Error("Degenerate", "the extended sets and wall sets match no wall-crossing type");
}

struct Crossing {
    Q t;
    QVec point;
    std::vector<QVec> normals;
};

struct PathProfile {
    std::vector<Crossing> crossings;
    std::vector<QVec> samples;          // samples[k] lies before crossings[k], last after all
    std::vector<AnticoneSet> regions;   // anticones at samples
};

inline QVec lerp(const QVec& a, const QVec& b, const Q& t)
{
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

inline PathProfile path_profile(const GitData& g, const QVec& a, const QVec& b)
{
    std::map<Q, std::vector<QVec>> hits;
    for (auto& n : candidate_normals(g)) {
        Q na = dot(n, a), nb = dot(n, b);
        if (na == 0 || nb == 0) throw Error("NonGeneric", "stability condition lies on a hyperplane spanned by characters");
        if ((na > 0) == (nb > 0)) continue;
        Q t = na / (na - nb);
        hits[t].push_back(n);
    }
    PathProfile p;
    Q prev = 0;
    for (auto& [t, ns] : hits) {
        p.samples.push_back(lerp(a, b, (prev + t) / 2));
        p.crossings.push_back({t, lerp(a, b, t), ns});
        prev = t;
    }
    p.samples.push_back(lerp(a, b, (prev + 1) / 2));
    if (p.crossings.empty()) p.samples.back() = a;
    for (auto& s : p.samples) p.regions.push_back(anticones(g, s));
    return p;
}

inline WallCrossing classify_wall(const GitData& g, const QVec& wp, const QVec& wm)
{
    require_valid(g);
    if (!is_generic(g, wp) || !is_generic(g, wm)) throw Error("NonGeneric", "stability conditions must avoid hyperplanes spanned by characters");
    AnticoneSet Ap = anticones(g, wp), Am = anticones(g, wm);
    if (Ap == Am) throw Error("NotAdjacent", "both stability conditions lie in the same chamber");
    PathProfile p = path_profile(g, wp, wm);
    std::vector<std::size_t> changes;
    for (std::size_t k = 0; k < p.crossings.size(); ++k)
        if (!(p.regions[k] == p.regions[k + 1])) changes.push_back(k);
    if (changes.size() != 1) throw Error("NotAdjacent", "the segment crosses " + std::to_string(changes.size()) + " walls");
    const Crossing& c = p.crossings[changes[0]];
    if (c.normals.size() != 1) throw Error("Degenerate", "the separating wall normal is not unique up to scale");
    if (!(p.regions.front() == Ap) || !(p.regions.back() == Am)) throw Error("NotAdjacent", "the chambers are not adjacent along the segment");
    WallCrossing w;
    w.e = c.normals[0];
    if (dot(w.e, wp) < 0)
        for (auto& x : w.e) x = -x;
    w.omega_plus = wp;
    w.omega_minus = wm;
    w.omega_zero = c.point;
    AnticoneSet A0 = anticones(g, c.point);
    if (A0 == Ap || A0 == Am) throw Error("NotAdjacent", "the wall point does not separate the chambers");
    for (int i = 0; i < g.m(); ++i) {
        Q v = dot(g.chars[i], w.e);
        w.crepancy += v;
        if (v > 0) w.M_plus |= Subset(1) << i;
        else if (v < 0) w.M_minus |= Subset(1) << i;
        else w.M_zero |= Subset(1) << i;
    }
    w.S_plus = extended_set(Ap);
    w.S_minus = extended_set(Am);
    w.S_zero = w.S_plus & w.S_minus;
    w.type = wall_type_from_sets(w.S_plus, w.S_minus, w.M_plus, w.M_minus, w.M_zero);
    return w;
}

// orbifold / K-set data

struct CurveClassSample {
    QVec d;
    QVec u;          // coordinates p_a . d
    QVec pairings;
    QVec sector;     // fractional parts of the pairings
    Q age = 0;
};

inline CurveClassSample make_sample(const GitData& g, const QVec& d, const QVec& u = {})
{
    CurveClassSample s;
    s.d = d;
    s.u = u;
    s.pairings = g.pairings(d);
    for (auto& x : s.pairings) {
        s.sector.push_back(frac(x));
        s.age += s.sector.back();
    }
    return s;
}

inline Subset integral_set(const QVec& pairings, bool nonneg)
{
    Subset s = 0;
    for (std::size_t i = 0; i < pairings.size(); ++i)
        if (is_integer(pairings[i]) && (!nonneg || pairings[i] >= 0)) s |= Subset(1) << i;
    return s;
}

inline bool in_kset(const GitData& g, const AnticoneSet& a, const QVec& d) { return a.contains(integral_set(g.pairings(d), false)); }

inline bool in_keff(const GitData& g, const AnticoneSet& a, const QVec& d) { return a.contains(integral_set(g.pairings(d), true)); }

// closure of the chamber: nonnegative span of every minimal anticone
inline bool is_nef(const GitData& g, const AnticoneSet& a, const QVec& p)
{
    for (auto s : a.minimal)
        if (!in_cone(select(g, s), p, false)) return false;
    return true;
}

inline Z grid_denominator(const GitData& g, const AnticoneSet& a)
{
    Z n = 1;
    int r = g.rank;
    for (auto s : a.minimal) {
        QMat rows;
        for (int i : members(s)) {
            QMat trial = rows;
            trial.push_back(g.chars[i]);
            if (rank(trial) > rows.size()) rows = trial;
            if (static_cast<int>(rows.size()) == r) break;
        }
        if (static_cast<int>(rows.size()) < r) throw Error("NotDM", "a minimal anticone does not span: the quotient is not Deligne-Mumford");
        for (auto& row : inverse(rows))
            for (auto& x : row) n = lcm_z(n, den(x));
    }
    return n;
}

inline void sort_samples(std::vector<CurveClassSample>& v)
{
    std::sort(v.begin(), v.end(), [](const CurveClassSample& a, const CurveClassSample& b) {
        Q sa = 0, sb = 0;
        for (auto& x : a.u) sa += x;
        for (auto& x : b.u) sb += x;
        if (sa != sb) return sa < sb;
        return a.d < b.d;
    });
}

// all d in K (or K_eff) with 0 <= p_a . d <= bound
inline std::vector<CurveClassSample> kset_enumerate(const GitData& g, const AnticoneSet& a, const std::vector<QVec>& p, const Q& bound,
                                                    bool effective_only = false)
{
    int r = g.rank;
    if (static_cast<int>(p.size()) != r) throw Error("InvalidBasis", "p-basis must have rank many vectors");
    QMat P(p.begin(), p.end());
    QMat Pinv;
    try {
        Pinv = inverse(P);
    } catch (const Error&) {
        throw Error("UnboundedEnumeration", "p-basis is singular: the enumeration box is infinite");
    }
    for (auto& pa : p)
        if (!is_nef(g, a, pa)) throw Error("UnboundedEnumeration", "p-basis vector " + to_string(pa) + " is not in the closed chamber");
    if (bound < 0) return {};
    Z n = grid_denominator(g, a);
    long long steps = to_ll(Q(floor_q(bound * Q(n))));
    std::vector<CurveClassSample> out;
    std::vector<long long> idx(r, 0);
    while (true) {
        QVec u(r);
        for (int i = 0; i < r; ++i) u[i] = Q(idx[i]) / Q(n);
        QVec d = mat_vec(Pinv, u);
        bool ok = effective_only ? in_keff(g, a, d) : in_kset(g, a, d);
        if (ok) out.push_back(make_sample(g, d, u));
        int k = r - 1;
        while (k >= 0 && idx[k] == steps) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
    }
    sort_samples(out);
    return out;
}

inline std::vector<CurveClassSample> kset_enumerate(const GitData& g, const QVec& omega, const std::vector<QVec>& p, const Q& bound,
                                                    bool effective_only = false)
{
    return kset_enumerate(g, anticones(g, omega), p, bound, effective_only);
}

// integer matrix of characters, rows = characters
inline std::vector<ZVec> char_matrix(const GitData& g)
{
    std::vector<ZVec> a;
    for (auto& c : g.chars) {
        ZVec row;
        for (auto& x : c) row.push_back(num(x));
        a.push_back(row);
    }
    return a;
}

// is v in the image of Z^r -> Z^m, l -> (D_i . l)_i ?
inline bool in_character_image(const GitData& g, const ZVec& v)
{
    SmithForm s = smith_normal_form(char_matrix(g));
    std::size_t m = v.size();
    ZVec uv(m, Z(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) uv[i] += s.u[i][j] * v[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (i < s.diagonal.size()) {
            if (uv[i] % s.diagonal[i] != 0) return false;
        } else if (uv[i] != 0)
            return false;
    }
    return true;
}

// torsion of N = coker(D)
inline std::vector<Z> cokernel_torsion(const GitData& g)
{
    std::vector<Z> t;
    for (auto& x : smith_normal_form(char_matrix(g)).diagonal)
        if (x != 1) t.push_back(x);
    return t;
}

struct BlowupData {
    GitData git;
    int exceptional = 0;
    QVec omega;
    bool exceptional_relation = false;
    std::vector<Z> torsion;
};

inline BlowupData blowup_git(const GitData& g, const QVec& e, const QVec& omega_zero, const Q& epsilon = Q(1, 100))
{
    require_valid(g);
    if (is_zero(e)) throw Error("InvalidWall", "e must be nonzero");
    if (epsilon <= 0) throw Error("InvalidEpsilon", "epsilon must be positive");
    BlowupData b;
    b.git.rank = g.rank + 1;
    ZVec rel(g.m() + 1, Z(0));
    bool any_plus = false;
    for (int i = 0; i < g.m(); ++i) {
        QVec c = g.chars[i];
        Q v = dot(c, e);
        if (v > 0) {
            c.push_back(-v);
            rel[i] = num(v);
            any_plus = true;
        } else
            c.push_back(Q(0));
        b.git.chars.push_back(c);
        b.git.names.push_back(g.name(i));
    }
    if (!any_plus) throw Error("InvalidWall", "M_+ is empty");
    QVec E(g.rank + 1, Q(0));
    E.back() = 1;
    b.git.chars.push_back(E);
    b.git.names.push_back("E");
    b.exceptional = g.m();
    rel[g.m()] = -1;
    b.omega = omega_zero;
    b.omega.push_back(-epsilon);
    b.exceptional_relation = in_character_image(b.git, rel);
    b.torsion = cokernel_torsion(b.git);
    return b;
}

inline BlowupData blowup_git(const GitData& g, const WallCrossing& w, const Q& epsilon = Q(1, 100))
{
    return blowup_git(g, w.e, w.omega_zero, epsilon);
}

inline Subset default_divisor_indices(const WallCrossing& w) { return w.M_plus | w.M_minus; }

inline QVec char_sum(const GitData& g, Subset s)
{
    QVec d(g.rank, Q(0));
    for (int i : members(s))
        for (int k = 0; k < g.rank; ++k) d[k] += g.chars[i][k];
    return d;
}

// a pair of generic stability conditions on both sides of the wall of w, close to the wall point
template <class Accept>
inline std::pair<QVec, QVec> near_wall_pair(const GitData& g, const WallCrossing& w, const QVec& tail, Accept accept)
{
    for (int k = 1; k <= 64; ++k) {
        for (int j = 1; j <= k; ++j) {
            Q t(j, k);
            if (j > 1 && gcd_z(j, k) != 1) continue;
            QVec a = lerp(w.omega_zero, w.omega_plus, t), b = lerp(w.omega_zero, w.omega_minus, t);
            for (auto& x : tail) {
                a.push_back(x);
                b.push_back(x);
            }
            if (!is_generic(g, a) || !is_generic(g, b)) continue;
            if (accept(a, b)) return {a, b};
        }
    }
    throw Error("NonGeneric", "no generic stability conditions near the wall");
}

struct LocalModel {
    GitData git;
    Subset indices = 0;
    WallCrossing induced;
    bool predicted_walls = false;
};

inline LocalModel local_model_git(const GitData& g, const WallCrossing& w, std::optional<Subset> indices = std::nullopt)
{
    LocalModel lm;
    lm.indices = indices.value_or(default_divisor_indices(w));
    if (lm.indices == 0) throw Error("Degenerate", "empty divisor index set gives a zero character");
    if (w.crepancy < 0) throw Error("Orientation", "orient the wall so that the crepancy is nonnegative");
    QVec D = char_sum(g, lm.indices);
    if (is_zero(D)) throw Error("Degenerate", "the divisor character is zero");
    lm.git = g;
    QVec minus_d = D;
    for (auto& x : minus_d) x = -x;
    lm.git.chars.push_back(minus_d);
    lm.git.names = {};
    for (int i = 0; i < g.m(); ++i) lm.git.names.push_back(g.name(i));
    lm.git.names.push_back("-D");
    std::optional<WallCrossing> found;
    near_wall_pair(lm.git, w, {}, [&](const QVec& a, const QVec& b) {
        try {
            found = classify_wall(lm.git, a, b);
            return true;
        } catch (const Error&) {
            return false;
        }
    });
    lm.induced = *found;
    if (w.crepant())
        lm.predicted_walls = lm.induced.crepant() && lm.induced.type == w.type;
    else
        lm.predicted_walls = lm.induced.crepant() && lm.induced.type == WallType::I;
    return lm;
}

struct ProjBundle {
    GitData git;
    Subset indices = 0;
    QVec omega_plus, omega_minus;
    std::vector<QVec> predicted_normals;
    std::vector<WallCrossing> crossings;
    bool predicted_walls = false;
};

inline ProjBundle proj_bundle_git(const GitData& g, const WallCrossing& w, const Q& epsilon, std::optional<Subset> indices = std::nullopt)
{
    if (epsilon <= 0) throw Error("InvalidEpsilon", "epsilon must be positive");
    if (w.crepancy < 0) throw Error("Orientation", "orient the wall so that the crepancy is nonnegative");
    ProjBundle pb;
    pb.indices = indices.value_or(default_divisor_indices(w));
    if (pb.indices == 0) throw Error("Degenerate", "empty divisor index set");
    QVec D = char_sum(g, pb.indices);
    pb.git.rank = g.rank + 1;
    for (int i = 0; i < g.m(); ++i) {
        QVec c = g.chars[i];
        c.push_back(Q(0));
        pb.git.chars.push_back(c);
        pb.git.names.push_back(g.name(i));
    }
    QVec a = D;
    for (auto& x : a) x = -x;
    a.push_back(Q(1));
    pb.git.chars.push_back(a);
    pb.git.names.push_back("(-D,1)");
    QVec b(g.rank + 1, Q(0));
    b.back() = 1;
    pb.git.chars.push_back(b);
    pb.git.names.push_back("(0,1)");
    QVec n1 = w.e, n2 = w.e;
    n1.push_back(Q(0));
    n2.push_back(dot(D, w.e));
    pb.predicted_normals.push_back(primitive(n1));
    if (dot(D, w.e) != 0) pb.predicted_normals.push_back(primitive(n2));
    std::size_t expected = pb.predicted_normals.size();
    auto walls_along = [&](const QVec& from, const QVec& to, std::vector<WallCrossing>& out) {
        PathProfile p = path_profile(pb.git, from, to);
        std::vector<std::size_t> changes;
        for (std::size_t k = 0; k < p.crossings.size(); ++k)
            if (!(p.regions[k] == p.regions[k + 1])) changes.push_back(k);
        out.clear();
        for (auto k : changes) {
            QVec left = k == 0 ? from : p.samples[k];
            QVec right = k + 1 == p.crossings.size() ? to : p.samples[k + 1];
            if (!is_generic(pb.git, left) || !is_generic(pb.git, right)) return false;
            out.push_back(classify_wall(pb.git, left, right));
        }
        return true;
    };
    auto pr = near_wall_pair(pb.git, w, {epsilon}, [&](const QVec& x, const QVec& y) {
        try {
            std::vector<WallCrossing> ws;
            if (!walls_along(x, y, ws) || ws.size() != expected) return false;
            pb.crossings = ws;
            return true;
        } catch (const Error&) {
            return false;
        }
    });
    pb.omega_plus = pr.first;
    pb.omega_minus = pr.second;
    bool normals_ok = true;
    for (std::size_t k = 0; k < expected; ++k) {
        QVec n = pb.crossings[k].e;
        QVec p = pb.predicted_normals[k];
        if (rank(QMat{n, p}) != 1) normals_ok = false;
    }
    if (expected == 1)
        pb.predicted_walls = normals_ok && pb.crossings[0].crepant() && pb.crossings[0].type == w.type;
    else
        pb.predicted_walls = normals_ok && pb.crossings[0].crepant() && pb.crossings[0].type == WallType::I && !pb.crossings[1].crepant() &&
                               (pb.crossings[1].type == WallType::II_remove_ray || pb.crossings[1].type == WallType::II_add_ray);
    return pb;
}

struct ChangeOfVariables {
    Q c;
    QVec c_i;
    bool exponents_agree = false;
};

inline ChangeOfVariables change_of_variables(const GitData& g, const QVec& e, const QVec& omega_plus, const QVec& omega_minus,
                                             const std::vector<QVec>& p_plus, const std::vector<QVec>& p_minus, int test_bound = 2)
{
    int r = g.rank;
    if (is_zero(e)) throw Error("InvalidBasis", "e must be nonzero");
    if (static_cast<int>(p_plus.size()) != r || static_cast<int>(p_minus.size()) != r) throw Error("InvalidBasis", "each basis needs rank many vectors");
    for (int i = 0; i + 1 < r; ++i)
        if (p_plus[i] != p_minus[i]) throw Error("InvalidBasis", "p_i^+ must equal p_i^- for i < r");
    AnticoneSet Ap = anticones(g, omega_plus), Am = anticones(g, omega_minus);
    for (auto& p : p_plus)
        if (!is_nef(g, Ap, p)) throw Error("InvalidBasis", "p^+ vector " + to_string(p) + " is not nef on the + side");
    for (auto& p : p_minus)
        if (!is_nef(g, Am, p)) throw Error("InvalidBasis", "p^- vector " + to_string(p) + " is not nef on the - side");
    Q pe = dot(p_plus[r - 1], e), me = dot(p_minus[r - 1], e);
    if (me == 0) throw Error("InvalidBasis", "p_r^- pairs to zero with e");
    ChangeOfVariables cv;
    cv.c = -pe / me;
    if (cv.c <= 0) throw Error("InvalidBasis", "c must be positive");
    // p_r^+ + c p_r^- = sum_{i<r} c_i p_i
    QVec target(r);
    for (int k = 0; k < r; ++k) target[k] = p_plus[r - 1][k] + cv.c * p_minus[r - 1][k];
    if (r > 1) {
        QMat a(r, QVec(r - 1));
        for (int k = 0; k < r; ++k)
            for (int i = 0; i < r - 1; ++i) a[k][i] = p_plus[i][k];
        if (!solve(a, target, cv.c_i)) throw Error("InvalidBasis", "p_r^+ + c p_r^- is not in the span of the common basis vectors");
    } else if (!is_zero(target))
        throw Error("InvalidBasis", "p^+ + c p^- must vanish in rank one");
    cv.exponents_agree = true;
    std::vector<long long> idx(r, -test_bound);
    while (true) {
        QVec d(r);
        for (int k = 0; k < r; ++k) d[k] = Q(idx[k]);
        for (int i = 0; i + 1 < r; ++i)
            if (dot(p_plus[i], d) != dot(p_minus[i], d)) cv.exponents_agree = false;
        Q yr = -cv.c * dot(p_minus[r - 1], d);
        for (int i = 0; i + 1 < r; ++i) yr += cv.c_i[i] * dot(p_minus[i], d);
        if (yr != dot(p_plus[r - 1], d)) cv.exponents_agree = false;
        int k = r - 1;
        while (k >= 0 && idx[k] == test_bound) idx[k--] = -test_bound;
        if (k < 0) break;
        ++idx[k];
    }
    return cv;
}

} // namespace wallcross

#endif
