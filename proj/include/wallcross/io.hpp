#ifndef WALLCROSS_IO_HPP
#define WALLCROSS_IO_HPP

#include "hfun.hpp"
#include "numcont.hpp"
#include "periods.hpp"

#include <json.hpp>

#include <cstdio>

namespace wallcross {

using json = nlohmann::json;

// parsing

inline Q q_from_json(const json& j)
{
    if (j.is_number_integer()) return Q(j.get<long long>());
    if (j.is_string()) return parse_q(j.get<std::string>());
    throw Error("ParseError", "expected an integer or a \"p/q\" string, got " + j.dump());
}

inline QVec qvec_from_json(const json& j)
{
    if (!j.is_array()) throw Error("ParseError", "expected an array, got " + j.dump());
    QVec v;
    for (auto& x : j) v.push_back(q_from_json(x));
    return v;
}

inline std::vector<QVec> qvecs_from_json(const json& j)
{
    if (!j.is_array()) throw Error("ParseError", "expected an array of vectors, got " + j.dump());
    std::vector<QVec> v;
    for (auto& x : j) v.push_back(qvec_from_json(x));
    return v;
}

inline const json& field(const json& j, const std::string& key)
{
    if (!j.is_object() || !j.contains(key)) throw Error("ParseError", "missing field \"" + key + "\"");
    return j.at(key);
}

inline GitData git_from_json(const json& j)
{
    GitData g;
    g.rank = field(j, "rank").get<int>();
    g.chars = qvecs_from_json(field(j, "chars"));
    if (j.contains("names")) g.names = j.at("names").get<std::vector<std::string>>();
    return g;
}

inline std::vector<int> ints_from_json(const json& j)
{
    if (!j.is_array()) throw Error("ParseError", "expected an index array, got " + j.dump());
    return j.get<std::vector<int>>();
}

inline PairData pair_from_json(const json& j, const std::optional<GitData>& fallback = std::nullopt)
{
    PairData p;
    if (j.contains("git"))
        p.git = git_from_json(j.at("git"));
    else if (fallback)
        p.git = *fallback;
    else
        throw Error("ParseError", "pair needs \"git\"");
    p.omega = qvec_from_json(field(j, "omega"));
    if (j.contains("omega_other")) p.omega_other = qvec_from_json(j.at("omega_other"));
    p.basis = qvecs_from_json(field(j, "basis"));
    if (j.contains("basis_names")) p.basis_names = j.at("basis_names").get<std::vector<std::string>>();
    if (j.contains("relative")) p.config.relative = ints_from_json(j.at("relative"));
    if (j.contains("ci")) p.config.ci = qvecs_from_json(j.at("ci"));
    if (j.contains("rel_bundles")) p.config.rel_bundles = qvecs_from_json(j.at("rel_bundles"));
    if (j.contains("zero_vars")) p.zero_vars = ints_from_json(j.at("zero_vars"));
    if (j.contains("N")) p.N = j.at("N").get<int>();
    if (j.contains("K")) p.K = j.at("K").get<int>();
    return p;
}

inline CompareOptions compare_options_from_json(const json& j)
{
    CompareOptions o;
    o.phi = qvecs_from_json(field(j, "phi"));
    if (j.contains("class_map")) o.class_map = qvecs_from_json(j.at("class_map"));
    if (j.contains("use_wall")) o.use_wall = j.at("use_wall").get<bool>();
    if (j.contains("yr")) o.yr = j.at("yr").get<int>();
    return o;
}

inline std::complex<double> complex_from_json(const json& j)
{
    if (j.is_number()) return {j.get<double>(), 0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw Error("ParseError", "expected a number or [re, im], got " + j.dump());
}

inline Kernel kernel_from_json(const json& j)
{
    auto s = j.get<std::string>();
    if (s == "sine") return Kernel::Sine;
    if (s == "exponential") return Kernel::Exponential;
    throw Error("ParseError", "kernel must be \"sine\" or \"exponential\"");
}

// {"kind":"cubic"} | {"kind":"fjrw","w":[..],"d":3} | {"kind":"custom","factors":[{"a":..,"b":..,"c":..,"exponent":..}],"kernel":..}
inline MellinBarnesSpec mb_spec_from_json(const json& j)
{
    std::string kind = j.value("kind", "cubic");
    MellinBarnesSpec s;
    if (kind == "cubic")
        s = cubic_surface_spec();
    else if (kind == "cubic_exponential")
        s = cubic_surface_exponential_spec();
    else if (kind == "fjrw")
        s = fjrw_family_spec(make_fjrw(field(j, "w").get<std::vector<long long>>(), field(j, "d").get<long long>()));
    else if (kind == "custom") {
        s.name = j.value("name", "custom");
        for (auto& f : field(j, "factors"))
            s.factors.push_back({q_from_json(field(f, "a")), q_from_json(field(f, "b")), q_from_json(field(f, "c")), field(f, "exponent").get<int>()});
        if (j.contains("kernel")) s.kernel = kernel_from_json(j.at("kernel"));
    } else
        throw Error("ParseError", "unknown integrand kind " + kind);
    if (j.contains("phase")) s.phase = q_from_json(j.at("phase"));
    if (j.contains("sigma")) s.sigma = j.at("sigma").get<double>();
    return s;
}

// serialization

inline std::string num_str(double x)
{
    if (x == 0) return "0";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

inline json to_json(const Q& q) { return to_string(q); }

inline json to_json(const QVec& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

inline json to_json(const std::vector<QVec>& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json subset_json(Subset s) { return members(s); }

inline json cplx(std::complex<double> z) { return json::array({num_str(z.real()), num_str(z.imag())}); }

inline json to_json(const GitData& g)
{
    json names = json::array();
    for (int i = 0; i < g.m(); ++i) names.push_back(g.name(i));
    return {{"rank", g.rank}, {"chars", to_json(g.chars)}, {"names", names}};
}

inline json to_json(const Diagnostics& d)
{
    return {{"valid", d.valid}, {"char_rank", d.char_rank}, {"degenerate_rows", d.degenerate_rows}, {"full_dimensional", d.full_dimensional}, {"messages", d.messages}};
}

inline json to_json(const AnticoneSet& a)
{
    json m = json::array();
    for (auto s : a.minimal) m.push_back(subset_json(s));
    return {{"m", a.m}, {"minimal", m}, {"extended_set", subset_json(extended_set(a))}};
}

inline json to_json(const WallCrossing& w)
{
    return {{"e", to_json(w.e)},
            {"omega_plus", to_json(w.omega_plus)},
            {"omega_minus", to_json(w.omega_minus)},
            {"omega_zero", to_json(w.omega_zero)},
            {"M_plus", subset_json(w.M_plus)},
            {"M_minus", subset_json(w.M_minus)},
            {"M_zero", subset_json(w.M_zero)},
            {"S_plus", subset_json(w.S_plus)},
            {"S_minus", subset_json(w.S_minus)},
            {"type", to_string(w.type)},
            {"crepancy", to_string(w.crepancy)},
            {"crepant", w.crepant()}};
}

inline json to_json(const CurveClassSample& s)
{
    return {{"d", to_json(s.d)}, {"u", to_json(s.u)}, {"sector", to_json(s.sector)}, {"age", to_string(s.age)}};
}

inline json to_json(const BracketLabel& l) { return {{"sector", to_json(l.sector)}, {"tangency", to_json(l.tangency)}}; }

inline json exps_json(const std::vector<int>& e) { return e; }

inline json to_json(const Scalar& s)
{
    json a = json::array();
    for (auto& [e, c] : s.terms()) a.push_back({{"exps", exps_json(e)}, {"c", to_string(c)}});
    return a;
}

inline json to_json(const NilpotentPoly& p, const std::vector<std::string>& names)
{
    json terms = json::array();
    for (auto& [m, c] : p.terms())
        terms.push_back({{"symbols", m.exps}, {"z2", m.z2}, {"tau", m.tau}, {"logz", m.logz}, {"scalar", to_json(c)}});
    return {{"text", p.str(names)}, {"terms", terms}};
}

inline json to_json(const HSeries& h)
{
    json e = json::array();
    for (auto& x : h.entries) {
        json o = {{"class", to_json(x.d)}, {"label", to_json(x.label)}, {"coeff", to_json(x.coeff, h.symbols)}};
        if (!x.k.empty()) o["k"] = x.k;
        e.push_back(o);
    }
    return {{"kind", h.kind}, {"symbols", h.symbols}, {"bound", to_string(h.bound)}, {"N", h.N}, {"K", h.K}, {"entries", e}};
}

inline json to_json(const GammaHatClass& g, const std::vector<std::string>& names)
{
    json a = json::array();
    for (auto& [l, p] : g.blocks) a.push_back({{"label", to_json(l)}, {"block", to_json(p, names)}});
    return a;
}

inline json to_json(const HIReport& r)
{
    return {{"ok", r.ok}, {"blocks", r.blocks}, {"first_mismatch", r.first_mismatch}, {"mutation", to_string(r.mutation)}};
}

inline json to_json(const ChangeOfVariables& c) { return {{"c", to_string(c.c)}, {"c_i", to_json(c.c_i)}, {"exponents_agree", c.exponents_agree}}; }

inline json to_json(const MatchReport& r, const HSeries& hp, const HSeries& hm)
{
    json matched = json::array();
    for (auto& m : r.matched) matched.push_back({{"plus", to_json(hp.entries[m.plus].d.d)}, {"minus", to_json(hm.entries[m.minus].d.d)}});
    auto un = [](const std::vector<UnmatchedEntry>& v, const HSeries& h) {
        json a = json::array();
        for (auto& u : v) a.push_back({{"d", to_json(h.entries[u.index].d.d)}, {"u", to_json(h.entries[u.index].d.u)}, {"reason", u.reason}});
        return a;
    };
    json o = {{"ok", r.ok},
              {"matched", matched},
              {"unmatched_plus", un(r.unmatched_plus, hp)},
              {"unmatched_minus", un(r.unmatched_minus, hm)},
              {"mismatches", r.mismatches},
              {"type_ii", r.type_ii},
              {"specialization_ok", r.specialization_ok}};
    if (r.change) o["change_of_variables"] = to_json(*r.change);
    return o;
}

inline json to_json(const BlowupData& b)
{
    std::vector<std::string> t;
    for (auto& x : b.torsion) t.push_back(x.str());
    return {{"git", to_json(b.git)}, {"exceptional", b.exceptional}, {"omega", to_json(b.omega)}, {"exceptional_relation", b.exceptional_relation}, {"torsion", t}};
}

inline json to_json(const LocalModel& l)
{
    return {{"git", to_json(l.git)},
            {"indices", subset_json(l.indices)},
            {"induced", to_json(l.induced)},
            {"M_plus_count", popcount(l.induced.M_plus)},
            {"M_minus_count", popcount(l.induced.M_minus)},
            {"predicted_walls", l.predicted_walls}};
}

inline json to_json(const ProjBundle& p)
{
    json c = json::array();
    for (auto& w : p.crossings) c.push_back(to_json(w));
    return {{"git", to_json(p.git)},
            {"indices", subset_json(p.indices)},
            {"omega_plus", to_json(p.omega_plus)},
            {"omega_minus", to_json(p.omega_minus)},
            {"predicted_normals", to_json(p.predicted_normals)},
            {"crossings", c},
            {"predicted_walls", p.predicted_walls}};
}

inline json bigints(const std::vector<Z>& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

inline json to_json(const PeriodRelations& r) { return {{"ok", r.ok()}, {"q4_matches_p3", r.q4_matches_p3}, {"x_restricts_to_p3", r.x_restricts_to_p3}, {"mismatches", r.mismatches}}; }

template <class T>
json to_json(const MBResult<T>& r)
{
    return {{"value", cplx(to_double(r.value.value))},
            {"error", num_str(r.value.error)},
            {"sigma", num_str(r.sigma)},
            {"direction", r.direction},
            {"decay_rate", num_str(r.decay_rate)},
            {"tail_length", num_str(r.tail_length)}};
}

template <class T>
json to_json(const SeriesValue<T>& s)
{
    return {{"value", cplx(to_double(s.value.value))}, {"terms", s.terms}, {"tail", num_str(s.tail)}, {"ratio", num_str(s.ratio)}};
}

template <class T>
json to_json(const ContinuedValue<T>& c)
{
    return {{"value", cplx(to_double(c.value.value))},
            {"constant", cplx(to_double(c.constant))},
            {"m_part", cplx(to_double(c.m_part))},
            {"l_part", cplx(to_double(c.l_part))},
            {"terms", c.terms},
            {"tail", num_str(c.tail)}};
}

inline json to_json(const FJRWData& d)
{
    json q = json::array();
    for (auto& x : d.charges) q.push_back(to_string(x));
    return {{"w", d.w}, {"d", d.d}, {"dprime", d.dprime}, {"charges", q}, {"nar", d.nar}};
}

inline json to_json(const ConnectionReport& r)
{
    json s = json::array();
    for (auto& x : r.samples)
        s.push_back({{"q", cplx(x.q)},
                     {"h", cplx(x.h)},
                     {"contour", cplx(x.lhs)},
                     {"combination", cplx(x.rhs)},
                     {"displayed_kernel_form", cplx(x.displayed)},
                     {"contour_error", num_str(x.lhs_error)},
                     {"difference", num_str(x.difference)},
                     {"ok", x.ok}});
    return {{"kind", r.kind}, {"data", to_json(r.data)}, {"tol", num_str(r.tol)}, {"samples", s}, {"max_difference", num_str(r.max_difference)}, {"ok", r.ok}};
}

inline json to_json(const ResidueCheck& r)
{
    return {{"d", r.d},
            {"m", r.m},
            {"numeric", cplx(r.numeric)},
            {"closed_form", cplx(r.closed_form)},
            {"difference", num_str(r.difference)},
            {"radius_change", num_str(r.radius_change)},
            {"ok", r.ok}};
}

inline json to_json(const TransitionReport& r)
{
    json fam = json::array();
    for (auto& f : r.families) {
        json e = json::array();
        for (auto& x : f.exponents) e.push_back(to_string(x));
        fam.push_back({{"family", f.name}, {"y_exponents", e}, {"positive", f.positive}});
    }
    json vals = json::array();
    for (std::size_t i = 0; i < r.y.size(); ++i)
        vals.push_back({{"y", num_str(r.y[i])}, {"continued", cplx(r.values[i])}, {"contour_minus_prefactor", cplx(r.contour[i])}, {"prefactor", cplx(r.prefactor[i])}});
    json ratios = json::array();
    for (double x : r.ratios) ratios.push_back(num_str(x));
    return {{"w", r.w}, {"c", r.c}, {"h", cplx(r.h)}, {"families", fam}, {"audit_ok", r.audit_ok}, {"values", vals}, {"ratios", ratios}, {"decay_ok", r.decay_ok}, {"ok", r.ok()}};
}

} // namespace wallcross

#endif
