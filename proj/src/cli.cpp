#include "wallcross/cli.hpp"

#include "wallcross/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace wallcross {

namespace {

struct RunConfig {
    std::string command;
    std::string derive_kind;
    std::string input;
    std::string output;
    std::string mode;
    std::string precision = "double";
    std::string spec = "p3_k3";
    std::string weights;
    std::string q, h;
    std::optional<std::string> bound;
    std::optional<int> cutoff;
    std::optional<double> tol;
    std::optional<long> terms;
    bool mutations = false;
    int jobs = 1;
};

struct Outcome {
    json report;
    bool pass = true;
    std::string summary;
};

const std::set<std::string> numeric_commands = {"mb-eval", "connection-check", "transition-check"};

json load(const RunConfig& c, bool required)
{
    if (c.input.empty()) {
        if (required) throw Error("Usage", c.command + " needs an input file");
        return json::object();
    }
    std::ifstream in(c.input);
    if (!in) throw Error("Usage", "cannot open input file " + c.input);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("ParseError", c.input + ": " + e.what());
    }
}

const json& section(const json& doc, const std::string& key) { return doc.contains(key) ? doc.at(key) : doc; }

Q bound_of(const RunConfig& c, const json& doc, const Q& fallback)
{
    if (c.bound) return parse_q(*c.bound);
    if (doc.contains("bound")) return q_from_json(doc.at("bound"));
    return fallback;
}

PairData pair_of(const RunConfig& c, const json& j)
{
    PairData p = pair_from_json(j);
    if (c.cutoff) p.N = *c.cutoff;
    return p;
}

std::complex<double> parse_complex(const std::string& s)
{
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error("Usage", "cannot read complex number \"" + s + "\" (use re or re,im)");
    }
}

std::vector<long long> parse_weights(const std::string& s)
{
    std::vector<long long> w;
    std::stringstream ss(s);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) w.push_back(std::stoll(item));
    } catch (const std::exception&) {
        throw Error("Usage", "weights must be a comma separated list of integers");
    }
    return w;
}

Outcome cmd_validate(const RunConfig& c)
{
    json doc = load(c, true);
    GitData g = git_from_json(section(doc, "git"));
    auto d = validate(g);
    Outcome o;
    o.report = {{"git", to_json(g)}, {"diagnostics", to_json(d)}};
    o.pass = d.valid;
    o.summary = d.valid ? "valid GIT data" : "invalid GIT data: " + (d.messages.empty() ? std::string("unknown") : d.messages.front());
    return o;
}

Outcome cmd_anticones(const RunConfig& c)
{
    json doc = load(c, true);
    GitData g = git_from_json(field(doc, "git"));
    QVec omega = qvec_from_json(field(doc, "omega"));
    auto a = anticones(g, omega);
    Outcome o;
    o.report = {{"omega", to_json(omega)}, {"anticones", to_json(a)}, {"generic", is_generic(g, omega)}};
    o.summary = std::to_string(a.minimal.size()) + " minimal anticones";
    return o;
}

WallCrossing wall_of(const json& doc, const GitData& g)
{
    return classify_wall(g, qvec_from_json(field(doc, "omega_plus")), qvec_from_json(field(doc, "omega_minus")));
}

Outcome cmd_classify(const RunConfig& c)
{
    json doc = load(c, true);
    GitData g = git_from_json(field(doc, "git"));
    auto w = wall_of(doc, g);
    Outcome o;
    o.report = {{"wall", to_json(w)}};
    if (doc.contains("basis_plus") && doc.contains("basis_minus")) {
        auto cv = change_of_variables(g, w.e, w.omega_plus, w.omega_minus, qvecs_from_json(doc.at("basis_plus")), qvecs_from_json(doc.at("basis_minus")));
        o.report["change_of_variables"] = to_json(cv);
    }
    o.summary = "type " + to_string(w.type) + ", crepancy " + to_string(w.crepancy);
    return o;
}

Outcome cmd_derive(const RunConfig& c)
{
    json doc = load(c, true);
    GitData g = git_from_json(field(doc, "git"));
    auto w = wall_of(doc, g);
    Q eps = doc.contains("epsilon") ? q_from_json(doc.at("epsilon")) : Q(1, 100);
    std::optional<Subset> idx;
    if (doc.contains("indices")) idx = subset_of(ints_from_json(doc.at("indices")));
    Outcome o;
    o.report = {{"wall", to_json(w)}, {"kind", c.derive_kind}};
    if (c.derive_kind == "blowup") {
        auto b = blowup_git(g, w, eps);
        o.report["blowup"] = to_json(b);
        o.pass = b.exceptional_relation;
        o.summary = std::string("blow-up relation ") + (o.pass ? "holds" : "fails");
    } else if (c.derive_kind == "local") {
        auto l = local_model_git(g, w, idx);
        o.report["local"] = to_json(l);
        o.pass = l.predicted_walls;
        o.summary = "local model wall type " + to_string(l.induced.type) + ", crepancy " + to_string(l.induced.crepancy) + (o.pass ? ", predicted walls found" : ", predicted walls missing");
    } else {
        auto p = proj_bundle_git(g, w, eps, idx);
        o.report["projbundle"] = to_json(p);
        o.pass = p.predicted_walls;
        std::string walls;
        for (auto& x : p.crossings) walls += (walls.empty() ? "" : ", ") + to_string(x.type) + " crepancy " + to_string(x.crepancy);
        o.summary = std::to_string(p.crossings.size()) + " walls (" + walls + ")" + (o.pass ? ", predicted walls found" : ", predicted walls missing");
    }
    return o;
}

Outcome cmd_series(const RunConfig& c)
{
    json doc = load(c, true);
    auto rp = resolve(pair_of(c, section(doc, "pair")));
    Q bound = bound_of(c, doc, Q(3));
    HSeries s;
    if (c.command == "hseries")
        s = h_series(rp, bound);
    else if (c.command == "iseries")
        s = i_series(rp, bound);
    else {
        auto ext = field(doc, "ext").get<std::vector<long long>>();
        long long xb = doc.value("x_bound", 2LL);
        s = extended_i_series(rp, ext, bound, xb);
    }
    Outcome o;
    o.report = {{"series", to_json(s)}};
    o.summary = std::to_string(s.entries.size()) + " entries of " + s.kind;
    return o;
}

Outcome cmd_gammahat(const RunConfig& c)
{
    json doc = load(c, true);
    auto rp = resolve(pair_of(c, section(doc, "pair")));
    auto g = gamma_hat(rp, bound_of(c, doc, Q(3)));
    Outcome o;
    o.report = {{"blocks", to_json(g, rp.symbols())}};
    o.summary = std::to_string(g.blocks.size()) + " Gamma-hat blocks";
    return o;
}

Outcome cmd_hi(const RunConfig& c)
{
    json doc = load(c, true);
    auto rp = resolve(pair_of(c, section(doc, "pair")));
    Q bound = bound_of(c, doc, Q(3));
    auto base = h_i_consistency(rp, bound);
    Outcome o;
    o.report = {{"consistency", to_json(base)}};
    o.pass = base.ok;
    o.summary = std::string("H-I relation ") + (base.ok ? "holds" : "fails") + " on " + std::to_string(base.blocks) + " blocks";
    if (c.mutations || doc.value("mutations", false)) {
        json m = json::array();
        int caught = 0;
        for (auto mut : {Mutation::GammaHat, Mutation::Mu, Mutation::Rho, Mutation::Inv, Mutation::Tau}) {
            auto r = h_i_consistency(rp, bound, mut);
            m.push_back(to_json(r));
            if (!r.ok) ++caught;
        }
        o.report["mutations"] = m;
        o.pass = o.pass && caught == 5;
        o.summary += "; " + std::to_string(caught) + "/5 mutations detected";
    }
    return o;
}

Outcome cmd_compare(const RunConfig& c)
{
    json doc = load(c, true);
    auto rp = resolve(pair_of(c, field(doc, "plus")));
    auto rm = resolve(pair_of(c, field(doc, "minus")));
    CompareOptions opt = compare_options_from_json(field(doc, "options"));
    Q bound = bound_of(c, doc, Q(3));
    Q bound_minus = doc.contains("bound_minus") && !c.bound ? q_from_json(doc.at("bound_minus")) : bound;
    auto hp = h_series(rp, bound), hm = h_series(rm, bound_minus);
    auto r = compare_sides(rp, hp, rm, hm, opt);
    Outcome o;
    o.report = {{"bound", to_string(bound)}, {"match", to_json(r, hp, hm)}};
    o.pass = r.ok;
    o.summary = std::to_string(r.matched.size()) + " matched, " + std::to_string(r.mismatches.size()) + " mismatches" + (r.ok ? ", identity holds" : ", identity fails");
    return o;
}

Outcome cmd_periods(const RunConfig& c)
{
    long long bound = c.bound ? to_ll(parse_q(*c.bound)) : 8;
    if (bound < 0) throw Error("Usage", "--bound must be nonnegative");
    Factorials f;
    Outcome o;
    if (c.spec == "relations") {
        auto r = period_relations(bound);
        o.report = to_json(r);
        o.pass = r.ok();
        o.summary = std::string("period relations ") + (r.ok() ? "hold" : "fail");
        return o;
    }
    switch (parse_period_kind(c.spec)) {
    case PeriodKind::P3K3: o.report = bigints(p3_k3(bound, f)); break;
    case PeriodKind::Q4K3: o.report = bigints(q4_k3(bound, f)); break;
    case PeriodKind::XBlowupK3: {
        json a = json::array();
        for (auto& row : x_blowup_k3(bound, f)) a.push_back(bigints(row));
        o.report = a;
        break;
    }
    }
    o.summary = c.spec + " coefficients up to " + std::to_string(bound);
    return o;
}

template <class T>
Cx<T> lift(std::complex<double> z) { return Cx<T>(T(z.real()), T(z.imag())); }

template <class T>
Outcome mb_eval(const RunConfig& c, const json& doc, double default_tol)
{
    auto spec = mb_spec_from_json(doc.contains("integrand") ? doc.at("integrand") : json::object());
    std::complex<double> q = c.q.empty() ? (doc.contains("q") ? complex_from_json(doc.at("q")) : std::complex<double>(0.01)) : parse_complex(c.q);
    std::complex<double> h = c.h.empty() ? (doc.contains("h") ? complex_from_json(doc.at("h")) : std::complex<double>(0.05)) : parse_complex(c.h);
    ContourOptions opt;
    opt.tol = c.tol.value_or(default_tol);
    long terms = c.terms.value_or(doc.value("terms", 60L));
    auto mb = mellin_barnes<T>(spec, lift<T>(q), lift<T>(h), opt);
    Outcome o;
    o.report = {{"integrand", spec.name}, {"kernel", to_string(spec.kernel)}, {"q", cplx(q)}, {"h", cplx(h)}, {"contour", to_json(mb)}};
    o.summary = "contour value " + num_str(static_cast<double>(mb.value.value.real())) + (mb.value.value.imag() < 0 ? " - " : " + ") +
                num_str(std::fabs(static_cast<double>(mb.value.value.imag()))) + "i";
    std::string against = doc.value("against", std::string("auto"));
    double mq = std::exp(log_ratio_constant(spec)) * std::abs(q);
    if (against == "auto") against = mq < 0.8 ? "series" : "continued";
    double check = doc.value("check_tol", against == "series" ? 1e-8 : 1e-6);
    Cx<T> other;
    if (against == "series") {
        auto s = series_eval<T>(spec, lift<T>(q), lift<T>(h), terms);
        o.report["series"] = to_json(s);
        other = s.value.value;
    } else if (against == "continued") {
        const json& ig = doc.contains("integrand") ? doc.at("integrand") : json::object();
        std::string kind = ig.value("kind", "cubic");
        if (kind != "cubic" && kind != "fjrw") throw Error("Usage", "the continued series is available for the cubic and fjrw integrands");
        FJRWData d = kind == "cubic" ? make_fjrw({1, 1, 1, 1}, 3) : make_fjrw(field(ig, "w").get<std::vector<long long>>(), field(ig, "d").get<long long>());
        auto s = continued_series<T>(d, lift<T>(q), lift<T>(h), terms);
        o.report["continued"] = to_json(s);
        other = s.value.value;
    } else {
        return o;
    }
    double diff = static_cast<double>(cabs(Cx<T>(mb.value.value - other)));
    o.report["difference"] = num_str(diff);
    o.report["check_tol"] = num_str(check);
    o.pass = diff < check;
    o.report["ok"] = o.pass;
    o.summary += ", |contour - " + against + "| = " + num_str(diff);
    return o;
}

Outcome cmd_mb(const RunConfig& c)
{
    json doc = load(c, false);
    if (c.precision == "extended") return mb_eval<Ext>(c, doc, 1e-30);
    return mb_eval<double>(c, doc, 1e-12);
}

Outcome cmd_connection(const RunConfig& c)
{
    json doc = load(c, false);
    std::string kind = doc.value("kind", std::string("cubic"));
    FJRWData d;
    double qdef = 200;
    if (kind == "cubic")
        d = make_fjrw({1, 1, 1, 1}, 3);
    else if (kind == "general") {
        std::vector<long long> w = c.weights.empty() ? doc.value("w", std::vector<long long>{1, 1, 1, 1, 1}) : parse_weights(c.weights);
        d = make_fjrw(w, doc.value("d", 3LL));
        qdef = 20 * std::exp(family_log_ratio(d));
    } else
        throw Error("Usage", "connection kind must be cubic or general");
    std::complex<double> q = c.q.empty() ? (doc.contains("q") ? complex_from_json(doc.at("q")) : std::complex<double>(qdef)) : parse_complex(c.q);
    std::vector<std::pair<std::complex<double>, std::complex<double>>> pts;
    if (!c.h.empty())
        pts.push_back({q, parse_complex(c.h)});
    else if (doc.contains("h"))
        for (auto& x : doc.at("h")) pts.push_back({q, complex_from_json(x)});
    else
        pts = default_connection_points(q.real());
    double tol = c.tol.value_or(doc.value("tol", 1e-6));
    long terms = c.terms.value_or(doc.value("terms", 60L));
    ConnectionReport r = c.precision == "extended" ? connection_report<Ext>(kind, d, pts, tol, terms, ContourOptions{1e-30}) : connection_report<double>(kind, d, pts, tol, terms);
    Outcome o;
    o.report = to_json(r);
    json res = json::array();
    bool res_ok = true;
    for (long long m = 1; m <= 5; ++m) {
        auto rc = residue_check(m, d.d);
        res.push_back(to_json(rc));
        res_ok = res_ok && rc.ok;
    }
    o.report["residues"] = res;
    o.pass = r.ok && res_ok;
    o.summary = "max |contour - combination| = " + num_str(r.max_difference) + (r.ok ? " within " : " exceeds ") + num_str(tol);
    if (!r.ok) {
        for (auto& s : r.samples)
            if (!s.ok) {
                std::ostringstream os;
                os.precision(16);
                os << "; ToleranceExceeded at h=" << s.h << ": contour " << s.lhs << " vs combination " << s.rhs;
                o.summary += os.str();
                break;
            }
    }
    return o;
}

Outcome cmd_transition(const RunConfig& c)
{
    json doc = load(c, false);
    std::vector<long long> w = c.weights.empty() ? doc.value("w", std::vector<long long>{1, 1, 1, 1}) : parse_weights(c.weights);
    std::complex<double> h = c.h.empty() ? (doc.contains("h") ? complex_from_json(doc.at("h")) : std::complex<double>(0.05)) : parse_complex(c.h);
    auto r = transition_limit_check(w, h, c.terms.value_or(doc.value("terms", 60L)));
    Outcome o;
    o.report = to_json(r);
    o.pass = r.ok();
    o.summary = std::string("exponent audit ") + (r.audit_ok ? "passes" : "fails") + ", decay test " + (r.decay_ok ? "passes" : "fails");
    return o;
}

Outcome dispatch(const RunConfig& c)
{
    if (c.command == "validate") return cmd_validate(c);
    if (c.command == "anticones") return cmd_anticones(c);
    if (c.command == "classify-wall") return cmd_classify(c);
    if (c.command == "derive") return cmd_derive(c);
    if (c.command == "hseries" || c.command == "iseries" || c.command == "extended-iseries") return cmd_series(c);
    if (c.command == "gammahat") return cmd_gammahat(c);
    if (c.command == "hi-check") return cmd_hi(c);
    if (c.command == "compare") return cmd_compare(c);
    if (c.command == "periods") return cmd_periods(c);
    if (c.command == "mb-eval") return cmd_mb(c);
    if (c.command == "connection-check") return cmd_connection(c);
    if (c.command == "transition-check") return cmd_transition(c);
    throw Error("Usage", "unknown subcommand " + c.command);
}

int exit_code_for(const Error& e)
{
    if (e.code() == "ToleranceExceeded") return 1;
    return 2;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"wall-crossing and analytic continuation checks for toric pairs"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    app.set_version_flag("--version", "0.1.0");

    auto common = [&](CLI::App* s, bool needs_input) {
        if (needs_input)
            s->add_option("input", c.input, "input JSON document")->required();
        else
            s->add_option("input", c.input, "optional input JSON document");
        s->add_option("--output,-o", c.output, "write the JSON report here and print a summary");
        s->add_option("--mode", c.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
        s->add_option("--jobs,-j", c.jobs, "maximum worker count")->check(CLI::PositiveNumber);
    };
    auto exact = [&](CLI::App* s) {
        s->add_option("--bound", c.bound, "degree bound (integer or p/q)");
        s->add_option("--cutoff", c.cutoff, "nilpotent truncation order N")->check(CLI::NonNegativeNumber);
    };
    auto numeric = [&](CLI::App* s) {
        s->add_option("--tol", c.tol, "tolerance")->check(CLI::NonNegativeNumber);
        s->add_option("--precision", c.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
        s->add_option("--q", c.q, "q as re or re,im");
        s->add_option("--h", c.h, "h = H/z as re or re,im");
        s->add_option("--terms", c.terms, "series terms")->check(CLI::PositiveNumber);
    };

    for (auto [name, desc] : std::vector<std::pair<std::string, std::string>>{{"validate", "check GIT data"},
                                                                              {"anticones", "minimal anticones at a stability condition"},
                                                                              {"classify-wall", "type and crepancy of a wall crossing"}}) {
        auto* s = app.add_subcommand(name, desc);
        common(s, true);
        s->callback([&c, name] { c.command = name; });
    }
    auto* derive = app.add_subcommand("derive", "derived GIT data for a wall");
    derive->require_subcommand(1);
    for (auto kind : {"blowup", "local", "projbundle"}) {
        auto* s = derive->add_subcommand(kind, std::string("derive the ") + kind + " GIT data");
        common(s, true);
        s->callback([&c, kind] {
            c.command = "derive";
            c.derive_kind = kind;
        });
    }
    for (auto [name, desc] : std::vector<std::pair<std::string, std::string>>{{"hseries", "H-function series"},
                                                                              {"iseries", "I-function series"},
                                                                              {"extended-iseries", "extended I-function series"},
                                                                              {"gammahat", "Gamma-hat blocks"},
                                                                              {"hi-check", "H-I relation, optionally with mutations"},
                                                                              {"compare", "match the series of two sides"}}) {
        auto* s = app.add_subcommand(name, desc);
        common(s, true);
        exact(s);
        if (name == "hi-check") s->add_flag("--mutations", c.mutations, "also run the five single-ingredient mutations");
        s->callback([&c, name] { c.command = name; });
    }
    {
        auto* s = app.add_subcommand("periods", "period coefficients or their relations");
        s->add_option("--spec", c.spec, "p3_k3, q4_k3, x_blowup_k3 or relations")->check(CLI::IsMember({"p3_k3", "q4_k3", "x_blowup_k3", "relations"}));
        s->add_option("--bound", c.bound, "largest degree");
        s->add_option("--output,-o", c.output, "write the JSON report here and print a summary");
        s->add_option("--mode", c.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
        s->add_option("--jobs,-j", c.jobs, "maximum worker count")->check(CLI::PositiveNumber);
        s->callback([&c] { c.command = "periods"; });
    }
    for (auto [name, desc] : std::vector<std::pair<std::string, std::string>>{{"mb-eval", "evaluate a Mellin-Barnes integral"},
                                                                              {"connection-check", "compare the contour integral with the FJRW combination"},
                                                                              {"transition-check", "vanishing of the continued transition family"}}) {
        auto* s = app.add_subcommand(name, desc);
        common(s, false);
        numeric(s);
        if (name != "mb-eval") s->add_option("--weights", c.weights, "comma separated weights");
        s->callback([&c, name] { c.command = name; });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "0.1.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for the subcommand list\n";
        return 2;
    }

    try {
        if (!c.mode.empty()) {
            bool numeric_cmd = numeric_commands.count(c.command) > 0;
            if (c.mode == "exact" && numeric_cmd) throw Error("Usage", c.command + " is numeric and cannot run in exact mode");
            if (c.mode == "numeric" && !numeric_cmd) throw Error("Usage", c.command + " is exact and cannot run in numeric mode");
        }
        Outcome o = dispatch(c);
        json report = o.report;
        if (report.is_object()) {
            report["command"] = c.derive_kind.empty() ? c.command : c.command + " " + c.derive_kind;
            report["pass"] = o.pass;
        }
        std::string text = report.dump(2) + "\n";
        if (!c.output.empty()) {
            std::ofstream f(c.output);
            if (!f) throw Error("Usage", "cannot write " + c.output);
            f << text;
            out << c.command << ": " << o.summary << "\n";
        } else {
            out << text;
            err << c.command << ": " << o.summary << "\n";
        }
        if (!o.pass) return c.command == "validate" ? 2 : 1;
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
}

} // namespace wallcross
