#pragma once

/**
 * @file scenario.hpp
 * @brief JSON scenario files and the task pipeline behind `diracinv run`.
 *
 * Scenario keys (all optional except spinor and tasks):
 *
 *     kappa       number
 *     spinor      [4 expression strings] | {"catalog": name, "args": {...}}
 *     params      {name: number | [re, im]}      bound in every expression
 *     potential   [4 expression strings] | "catalog"
 *     f           expression string | [expression strings]   family task
 *     domain      {"box": [[lo,hi] x4], "samples": n, "seed": s}
 *     tolerances  {indicator, guard, imag, residual, mass, cross_check, gauge, lightlike}
 *     tasks       [classify, mass, invert, family, verify, selftest] | "all"
 *
 * Tasks run in the order classify, mass, invert, family, verify, selftest
 * regardless of the order given.
 */

#include "diracinv/catalog.hpp"
#include "diracinv/degeneracy.hpp"
#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/inversion.hpp"
#include "diracinv/potential.hpp"
#include "diracinv/report.hpp"
#include "diracinv/sampling.hpp"
#include "diracinv/selftest.hpp"
#include "diracinv/verify.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace diracinv {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr std::array<const char*, 6> kTaskOrder{"classify", "mass", "invert", "family", "verify", "selftest"};

struct Tolerances {
    double indicator = 1e-10;   ///< classification, relative to |Psi|^2
    double guard = 1e-10;       ///< inversion and Theta denominators, relative to |Psi|^2
    double imag = 1e-8;         ///< imaginary part allowed in recovered a and Theta
    double residual = 1e-9;     ///< Dirac residual accepted as a solution
    double mass = 1e-9;         ///< mass spread and declared-vs-extracted, relative to 1 + |kappa|
    double cross_check = 1e-8;  ///< direct vs gauge-fixed mass
    double gauge = 1e-9;        ///< field-tensor equality
    double lightlike = 1e-8;    ///< |gap| between verified potentials
    double support = 1e-12;     ///< support threshold, relative to 1 + max |Psi|
};

struct Scenario {
    nlohmann::ordered_json source;  ///< the file as read, echoed in the report
    std::optional<double> kappa;
    SpinorField spinor;
    std::optional<FourPotential> potential;
    std::optional<CatalogEntry> catalog;
    std::vector<std::string> family_f;
    Params params;
    SampleDomain domain;
    Tolerances tol;
    std::vector<std::string> tasks;  ///< in pipeline order

    [[nodiscard]] bool has_task(std::string_view t) const
    {
        return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
    }
};

/// Command-line overrides applied after the file is read.
struct ScenarioOverrides {
    std::optional<std::uint64_t> seed{};
    std::optional<std::size_t> samples{};
    std::optional<double> tol{};  ///< replaces the indicator and guard tolerances
};

namespace detail {

using ojson = nlohmann::ordered_json;

[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

inline double finite_number(const ojson& v, const std::string& where)
{
    if (!v.is_number()) schema(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, where + " is not finite");
    return x;
}

inline Expr parse_at(const ojson& v, const std::string& where)
{
    if (!v.is_string()) schema(where + " must be an expression string");
    try {
        return parse(v.get<std::string>());
    } catch (const ParseError& e) {
        std::string msg = e.what();
        const std::string prefix = std::string(to_string(ErrorCode::Parse)) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        throw Error(ErrorCode::Parse, where + " " + msg);
    }
}

inline std::array<Expr, 4> four_exprs(const ojson& v, const std::string& where)
{
    if (!v.is_array() || v.size() != 4) schema(where + " must be an array of 4 expression strings");
    std::array<Expr, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = parse_at(v[k], where + "[" + std::to_string(k) + "]");
    return out;
}

inline void check_keys(const ojson& obj, std::initializer_list<const char*> known, const std::string& where)
{
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) schema("unknown key '" + item.key() + "' in " + where);
    }
}

/// Every parameter referenced by e must be bound.
inline void require_bound(const Expr& e, const Params& p, const std::string& where)
{
    std::set<std::string> names;
    collect_params(e, names);
    for (const auto& name : names)
        if (!p.count(name)) throw Error(ErrorCode::UnboundName, where + ": unbound name '" + name + "'");
}

inline ojson point_json(const Point& p) { return ojson::array({p[0], p[1], p[2], p[3]}); }

}  // namespace detail

[[nodiscard]] inline Scenario parse_scenario(const nlohmann::ordered_json& j, const ScenarioOverrides& ov = {})
{
    using detail::schema;
    if (!j.is_object()) schema("scenario must be a JSON object");
    detail::check_keys(j, {"kappa", "spinor", "params", "potential", "f", "domain", "tolerances", "tasks", "name",
                           "description"},
                       "scenario");
    Scenario s;
    s.source = j;

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (!p.is_object()) schema("params must be an object");
        for (const auto& item : p.items()) {
            const auto& v = item.value();
            const std::string where = "params." + item.key();
            if (v.is_number())
                s.params[item.key()] = detail::finite_number(v, where);
            else if (v.is_array() && v.size() == 2)
                s.params[item.key()] = cplx(detail::finite_number(v[0], where), detail::finite_number(v[1], where));
            else
                schema(where + " must be a number or [re, im]");
        }
    }

    if (j.contains("kappa")) s.kappa = detail::finite_number(j.at("kappa"), "kappa");

    if (!j.contains("spinor")) schema("missing 'spinor'");
    const auto& sp = j.at("spinor");
    if (sp.is_object()) {
        detail::check_keys(sp, {"catalog", "args"}, "spinor");
        if (!sp.contains("catalog") || !sp.at("catalog").is_string()) schema("spinor.catalog must be a name");
        s.catalog = make_catalog_entry(sp.at("catalog").get<std::string>(), sp.value("args", nlohmann::ordered_json::object()));
        s.spinor = SpinorField(s.catalog->spinor.components(), merge_params(s.catalog->spinor.params(), s.params));
        if (!s.kappa) s.kappa = s.catalog->kappa;
    } else {
        s.spinor = SpinorField(detail::four_exprs(sp, "spinor"), s.params);
    }
    for (int c = 0; c < 4; ++c) detail::require_bound(s.spinor.component(c), s.spinor.params(), "spinor");

    if (j.contains("potential")) {
        const auto& pv = j.at("potential");
        if (pv.is_string() && pv.get<std::string>() == "catalog") {
            if (!s.catalog || !s.catalog->potential) schema("potential \"catalog\" needs a catalog spinor with a known potential");
            s.potential = s.catalog->potential;
        } else {
            s.potential = FourPotential(detail::four_exprs(pv, "potential"), s.params);
        }
    } else if (s.catalog && s.catalog->potential) {
        s.potential = s.catalog->potential;
    }
    if (s.potential)
        for (int c = 0; c < 4; ++c) detail::require_bound(s.potential->component(c), s.potential->params(), "potential");

    if (j.contains("f")) {
        const auto& f = j.at("f");
        if (f.is_string())
            s.family_f.push_back(f.get<std::string>());
        else if (f.is_array() && !f.empty())
            for (const auto& x : f) {
                if (!x.is_string()) schema("f entries must be expression strings");
                s.family_f.push_back(x.get<std::string>());
            }
        else
            schema("f must be an expression string or a non-empty array of them");
        for (std::size_t k = 0; k < s.family_f.size(); ++k) {
            const Expr e = detail::parse_at(detail::ojson(s.family_f[k]), "f[" + std::to_string(k) + "]");
            detail::require_bound(e, s.params, "f");
        }
    } else {
        s.family_f = family_functions();
    }

    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (!d.is_object()) schema("domain must be an object");
        detail::check_keys(d, {"box", "samples", "seed"}, "domain");
        if (d.contains("box")) {
            const auto& b = d.at("box");
            if (!b.is_array() || b.size() != 4) schema("domain.box must be 4 [lo, hi] pairs");
            for (std::size_t a = 0; a < 4; ++a) {
                if (!b[a].is_array() || b[a].size() != 2) schema("domain.box entries must be [lo, hi]");
                s.domain.box[a] = {detail::finite_number(b[a][0], "domain.box"), detail::finite_number(b[a][1], "domain.box")};
            }
        }
        if (d.contains("samples")) {
            const auto& n = d.at("samples");
            if (!n.is_number_integer() || n.get<std::int64_t>() < 1) schema("domain.samples must be a positive integer");
            s.domain.count = n.get<std::size_t>();
        }
        if (d.contains("seed")) {
            const auto& n = d.at("seed");
            if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0))
                schema("domain.seed must be a non-negative integer");
            s.domain.seed = d.at("seed").get<std::uint64_t>();
        }
    }
    if (ov.seed) s.domain.seed = *ov.seed;
    if (ov.samples) s.domain.count = *ov.samples;
    s.domain.validate();

    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) schema("tolerances must be an object");
        detail::check_keys(t, {"indicator", "guard", "imag", "residual", "mass", "cross_check", "gauge", "lightlike",
                               "support"},
                           "tolerances");
        auto get = [&](const char* key, double& slot) {
            if (!t.contains(key)) return;
            slot = detail::finite_number(t.at(key), std::string("tolerances.") + key);
            if (!(slot > 0)) schema(std::string("tolerances.") + key + " must be positive");
        };
        get("indicator", s.tol.indicator);
        get("guard", s.tol.guard);
        get("imag", s.tol.imag);
        get("residual", s.tol.residual);
        get("mass", s.tol.mass);
        get("cross_check", s.tol.cross_check);
        get("gauge", s.tol.gauge);
        get("lightlike", s.tol.lightlike);
        get("support", s.tol.support);
    }
    if (ov.tol) {
        if (!(*ov.tol > 0) || !std::isfinite(*ov.tol)) schema("--tol must be a positive number");
        s.tol.indicator = s.tol.guard = *ov.tol;
    }

    if (!j.contains("tasks")) schema("missing 'tasks'");
    const auto& tk = j.at("tasks");
    std::vector<std::string> wanted;
    if (tk.is_string() && tk.get<std::string>() == "all") {
        for (const char* t : kTaskOrder)
            if (std::string_view(t) != "selftest") wanted.emplace_back(t);
    } else if (tk.is_array() && !tk.empty()) {
        for (const auto& t : tk) {
            if (!t.is_string()) schema("tasks must be strings");
            const auto name = t.get<std::string>();
            if (std::find_if(kTaskOrder.begin(), kTaskOrder.end(), [&](const char* k) { return name == k; }) ==
                kTaskOrder.end())
                schema("unknown task '" + name + "'");
            wanted.push_back(name);
        }
    } else {
        schema("tasks must be \"all\" or a non-empty array");
    }
    for (const char* t : kTaskOrder)
        if (std::find(wanted.begin(), wanted.end(), t) != wanted.end()) s.tasks.emplace_back(t);
    return s;
}

/// Parse scenario text; JSON syntax errors become Schema errors with a byte offset.
[[nodiscard]] inline Scenario parse_scenario_text(const std::string& text, const ScenarioOverrides& ov = {})
{
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Schema, std::string("scenario is not valid JSON (byte ") + std::to_string(e.byte) + ")");
    }
    return parse_scenario(j, ov);
}

// ---------------------------------------------------------------------------

struct RunResult {
    Report report{"run"};
    int exit_code = 0;
};

namespace detail {

inline ojson error_json(const Error& e) { return {{"error", to_string(e.code())}, {"message", e.what()}}; }

/// Domain errors that make a task fail (exit 1) rather than the input invalid.
inline bool is_task_failure(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DegeneratePoint:
    case ErrorCode::GuardViolated:
    case ErrorCode::NonRealPotential:
    case ErrorCode::NonRealTheta:
    case ErrorCode::ZeroNorm:
    case ErrorCode::NoSupportPoints:
    case ErrorCode::MassInconsistent:
    case ErrorCode::NotDegenerate:
    case ErrorCode::NotRepresentable:
    case ErrorCode::Quadrature: return true;
    default: return false;
    }
}

inline double require_kappa(const Scenario& s, const std::optional<double>& extracted, const char* task)
{
    if (s.kappa) return *s.kappa;
    if (extracted) return *extracted;
    throw Error(ErrorCode::Schema, std::string("task '") + task + "' needs kappa (declare it or run the mass task)");
}

}  // namespace detail

/// Run every task of the scenario. Input errors propagate as exceptions.
[[nodiscard]] inline RunResult run_scenario(const Scenario& s)
{
    using detail::ojson;
    RunResult out;
    Report& root = out.report;
    root.set("tool", "diracinv");
    root.set("version", kVersion);
    root.set("seed", s.domain.seed);
    root.set("samples", s.domain.count);
    root.set("scenario", s.source);
    ojson tol = {{"indicator", s.tol.indicator}, {"guard", s.tol.guard},         {"imag", s.tol.imag},
                 {"residual", s.tol.residual},   {"mass", s.tol.mass},           {"cross_check", s.tol.cross_check},
                 {"gauge", s.tol.gauge},         {"lightlike", s.tol.lightlike}, {"support", s.tol.support}};
    root.set("tolerances", tol);
    if (s.catalog) root.set("catalog", {{"name", s.catalog->name}, {"args", s.catalog->args}});

    const FourPotential base = s.potential.value_or(FourPotential::zero());
    std::optional<Classification> cls;
    std::optional<double> extracted;

    auto classify_now = [&]() -> const Classification& {
        if (!cls) cls = classify(s.spinor, s.domain, s.tol.indicator, s.kappa, s.tol.support);
        return *cls;
    };

    for (const auto& task : s.tasks) {
        Report rep(task);
        try {
            if (task == "classify") {
                const auto& c = classify_now();
                rep.set("verdict", to_string(c.verdict));
                rep.set("criterion", "|Psi* delta4 Psi| <= tol |Psi|^2 on sampled support points");
                rep.set("support_points", c.support_points.size());
                rep.set("s_points", c.s_points.size());
                rep.set("degenerate_points", c.degenerate_points.size());
                rep.set("null_points", c.null_points);
                rep.set("max_relative_indicator_degenerate", c.max_relative_indicator);
                rep.set("min_relative_indicator_s", c.min_relative_indicator);
                if (c.gamma2_covers_support) {
                    rep.set("gamma2_failures", c.gamma2_failures);
                    rep.check("Psi^T g2 Psi nonzero on the sampled support", *c.gamma2_covers_support,
                              {{"failures", c.gamma2_failures}});
                }
                if (s.catalog && s.catalog->expected)
                    rep.check("verdict matches catalog", c.verdict == *s.catalog->expected,
                              {{"expected", to_string(*s.catalog->expected)}});
            } else if (task == "mass") {
                MassOptions mo;
                mo.support_tol = s.tol.support;
                mo.spread_tol = s.tol.mass;
                mo.cross_check_tol = s.tol.cross_check;
                rep.set("a0", to_string(base.component(0)));
                try {
                    const auto m = extract_mass(s.spinor, base.component(0), s.domain, base.params(), mo);
                    extracted = m.mean;
                    rep.set("kappa", m.mean);
                    rep.set("spread", m.spread);
                    rep.set("max_imag", m.max_imag);
                    rep.set("cross_check", m.cross_check);
                    rep.set("points", m.points);
                    rep.check("single mass over the support", true);
                    if (s.kappa) {
                        const double diff = std::abs(m.mean - *s.kappa);
                        const bool ok = diff <= s.tol.mass * (1.0 + std::abs(*s.kappa));
                        rep.check("extracted mass matches declared kappa", ok,
                                  {{"declared", *s.kappa}, {"difference", diff}});
                        if (!ok) rep.set("status", "MassInconsistent");
                    }
                } catch (const Error& e) {
                    if (!detail::is_task_failure(e.code())) throw;
                    rep.set("status", to_string(e.code()));
                    rep.check("single mass over the support", false, detail::error_json(e));
                }
            } else if (task == "invert") {
                const double kappa = detail::require_kappa(s, extracted, "invert");
                InversionOptions io;
                io.guard = s.tol.guard;
                io.imag_tol = s.tol.imag;
                ojson rows = ojson::array();
                std::size_t ok = 0, degenerate = 0, nonreal = 0;
                double oracle = 0.0, vs_given = 0.0, agree = 0.0;
                const auto support = sample_support(s.spinor, s.domain, s.tol.support).support;
                for (const auto& p : support) {
                    const SpinorJet j = s.spinor.jet(p);
                    ojson row = {{"x", detail::point_json(p)}};
                    try {
                        const auto r = invert_combined(j, kappa, io);
                        ++ok;
                        row["a"] = {r.a[0], r.a[1], r.a[2], r.a[3]};
                        row["imag"] = r.max_imag();
                        const double res = dirac_residual(j, r.a, kappa).norm();
                        row["residual"] = res;
                        oracle = std::max(oracle, res);
                        for (int route = 0; route < 2; ++route) {
                            try {
                                const auto r2 = route == 0 ? invert_gamma4(j, kappa, io) : invert_gamma5gamma4(j, kappa, io);
                                for (std::size_t mu = 0; mu < 4; ++mu) agree = std::max(agree, std::abs(r2.a[mu] - r.a[mu]));
                            } catch (const Error& e) {
                                if (e.code() != ErrorCode::GuardViolated && e.code() != ErrorCode::NonRealPotential) throw;
                            }
                        }
                        if (s.potential) {
                            const auto given = s.potential->values(p);
                            for (std::size_t mu = 0; mu < 4; ++mu) vs_given = std::max(vs_given, std::abs(r.a[mu] - given[mu]));
                        }
                    } catch (const Error& e) {
                        if (e.code() == ErrorCode::DegeneratePoint) ++degenerate;
                        else if (e.code() == ErrorCode::NonRealPotential) ++nonreal;
                        else throw;
                        row["error"] = to_string(e.code());
                    }
                    rows.push_back(std::move(row));
                }
                rep.set("kappa", kappa);
                rep.set("recovered_points", ok);
                rep.set("degenerate_points", degenerate);
                rep.set("nonreal_points", nonreal);
                rep.set("table", std::move(rows));
                if (ok == 0) {
                    rep.skip("recovered potential satisfies the Dirac equation", "no point passes the delta4 guard");
                } else {
                    rep.check_below("recovered potential satisfies the Dirac equation", oracle, s.tol.residual);
                    rep.check_below("gamma4 and gamma5 gamma4 routes agree with the combined route", agree, 1e-8);
                    if (s.potential && (!cls || cls->verdict == Verdict::NonDegenerate))
                        rep.check_below("recovered potential equals the supplied one", vs_given, 1e-8);
                }
                rep.check("recovered potential is real", nonreal == 0, {{"nonreal_points", nonreal}});
            } else if (task == "family") {
                const double kappa = detail::require_kappa(s, extracted, "family");
                const auto& c = classify_now();
                ojson members = ojson::array();
                std::vector<FourPotential> verified{base};
                bool any_inequivalent = false, any_nonconstant = false;
                for (const auto& text : s.family_f) {
                    const Expr f = parse(text);
                    const auto member = potential_family(s.spinor, base, f, c, s.params);
                    const auto r = residual_norm(s.spinor, member, kappa, s.domain, s.tol.support);
                    const double dist = tensor_distance(member, base, s.domain);
                    const bool equiv = dist < s.tol.gauge;
                    ojson m = {{"f", text}, {"residual_max", r.max}, {"tensor_distance_to_base", dist},
                               {"gauge_equivalent_to_base", equiv}};
                    if (r.argmax) m["residual_argmax"] = detail::point_json(*r.argmax);
                    members.push_back(std::move(m));
                    rep.check_below("residual f=" + text, r.max, s.tol.residual);
                    if (r.max < s.tol.residual) verified.push_back(member);
                    bool constant = true;
                    for (int ax = 0; ax < 4; ++ax) constant = constant && differentiate(f, ax).is_zero();
                    any_nonconstant = any_nonconstant || !constant;
                    any_inequivalent = any_inequivalent || !equiv;
                }
                rep.set("members", std::move(members));
                if (any_nonconstant)
                    rep.check("gauge-inequivalent member found", any_inequivalent);
                else
                    rep.skip("gauge-inequivalent member found", "every f is constant");
                double gap = 0.0;
                for (const auto& p : c.support_points)
                    for (std::size_t a = 0; a < verified.size(); ++a)
                        for (std::size_t b = a + 1; b < verified.size(); ++b)
                            gap = std::max(gap, std::abs(lightlike_gap(verified[a], verified[b], p)));
                rep.set("verified_potentials", verified.size());
                rep.check_below("light-like gap between verified potentials", gap, s.tol.lightlike);
            } else if (task == "verify") {
                const double kappa = detail::require_kappa(s, extracted, "verify");
                if (!s.potential) {
                    rep.skip("Dirac residual", "no potential supplied");
                } else {
                    const auto r = residual_norm(s.spinor, *s.potential, kappa, s.domain, s.tol.support);
                    if (r.no_support_points) {
                        rep.check("Dirac residual", false, {{"error", "NoSupportPoints"}});
                    } else {
                        rep.set("kappa", kappa);
                        rep.set("residual_max", r.max);
                        rep.set("residual_max_relative", r.max_relative);
                        if (r.argmax) rep.set("residual_argmax", detail::point_json(*r.argmax));
                        rep.set("points", r.points.size());
                        rep.check_below("Dirac residual", r.max, s.tol.residual);
                    }
                }
            } else if (task == "selftest") {
                SelftestOptions so;
                so.seed = s.domain.seed;
                so.samples = s.domain.count;
                rep.add_section(run_selftest(so));
            }
        } catch (const Error& e) {
            if (!detail::is_task_failure(e.code())) throw;
            rep.set("status", to_string(e.code()));
            rep.check(task + " completed", false, detail::error_json(e));
        }
        root.add_section(std::move(rep));
    }
    root.set("tasks", s.tasks);
    out.exit_code = root.passed() ? 0 : 1;
    return out;
}

/// Built-in demo scenario for a catalog entry.
[[nodiscard]] inline nlohmann::ordered_json demo_scenario(const std::string& name)
{
    using detail::ojson;
    if (name == "rest_plane_wave")
        return {{"name", "demo rest_plane_wave"},
                {"spinor", {{"catalog", "rest_plane_wave"}, {"args", {{"kappa", 1.0}}}}},
                {"potential", "catalog"},
                {"tasks", {"classify", "mass", "invert", "verify"}}};
    if (name == "degenerate_example")
        return {{"name", "demo degenerate_example"},
                {"spinor",
                 {{"catalog", "degenerate_example"},
                  {"args", {{"kappa", 1.0}, {"alpha", 0.3}, {"phi1", 0.2}, {"phi2", -0.1}}}}},
                {"potential", "catalog"},
                {"f", {"1", "x0", "sin(x0+x1)"}},
                {"tasks", "all"}};
    if (name == "lset")
        return {{"name", "demo lset"},
                {"spinor", {{"catalog", "lset"}, {"args", {{"member", 1}}}}},
                {"tasks", {"classify"}}};
    throw Error(ErrorCode::Schema, "unknown catalog entry '" + name + "'");
}

}  // namespace diracinv
