#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "noether/conserved.hpp"
#include "noether/cyclic.hpp"
#include "noether/error.hpp"
#include "noether/numeric.hpp"

namespace noether::cli {

namespace {

class Status {
public:
    void assertion(bool ok) {
        if (!ok) code_ = std::max<int>(code_, kAssertionFailure);
    }
    void verification(bool ok) {
        if (!ok) code_ = kVerificationFailure;
    }
    int code() const { return code_; }
    std::string label() const {
        switch (code_) {
            case kPass: return "pass";
            case kAssertionFailure: return "assertion_failure";
            default: return "verification_failure";
        }
    }

private:
    int code_ = kPass;
};

class Stopwatch {
public:
    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        laps_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
    const Json& laps() const { return laps_; }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    Json laps_ = Json::object();
};

Json rationals(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

Json header(const std::string& command, const ProblemFile& p, const RunOptions& opt) {
    Json r;
    r["format"] = 1;
    r["command"] = command;
    r["problem"] = p.name;
    r["seed"] = opt.seed;
    r["sigma"] = noether_sign();
    r["coordinates"] = p.coordinates;
    r["order"] = p.order;
    Json params = Json::object();
    for (const auto& [k, v] : p.parameters) params[k] = v.str();
    r["parameters"] = params;
    return r;
}

LagrangianSpec load_spec(const ProblemFile& p) {
    const Expr l = parse_field(p, p.lagrangian, p.coordinates);
    try {
        return LagrangianSpec::make(static_cast<int>(p.coordinates.size()), p.order, l);
    } catch (const Error& e) {
        throw Error(e.kind(), p.source + ":" + std::to_string(p.lagrangian.line) + ": " + e.detail());
    }
}

void finish(RunResult& res, const Status& status, const Json& warnings, const Stopwatch& clock,
            const RunOptions& opt) {
    res.report["warnings"] = warnings;
    if (opt.timings) res.report["timings_ms"] = clock.laps();
    res.report["status"] = status.label();
    res.report["exit_code"] = status.code();
    res.exit_code = status.code();
}

struct Quantity {
    std::string label;
    Expr expr;
};

Json numeric_section(const ProblemFile& p, const LagrangianSpec& spec, const std::vector<Quantity>& quantities,
                     const RunOptions& opt, Status& status, Json& warnings) {
    const NumericBlock& nb = *p.numeric;
    const double tol_abs = opt.tol_abs.value_or(nb.tol_abs);
    const double tol_rel = opt.tol_rel.value_or(nb.tol_rel);
    Json out;
    out["t_end"] = nb.t_end;
    out["step"] = nb.step;
    out["tol_abs"] = tol_abs;
    out["tol_rel"] = tol_rel;

    const FirstOrderSystem sys = reduce_to_first_order(spec, opt.max_order);
    Json red;
    red["dim"] = sys.dim();
    Json layout = Json::array();
    for (const auto& v : sys.state_layout) layout.push_back(print(Expr::jet(v), p.coordinates));
    red["state"] = layout;
    red["symbolic"] = sys.symbolic();
    Json solved = Json::array();
    if (sys.symbolic()) {
        for (std::size_t s = 0; s < sys.dim(); ++s) {
            const JetVar v = sys.state_layout[s];
            if (v.order + 1 == sys.top_orders[static_cast<std::size_t>(v.coord)]) {
                solved.push_back(print(Expr::var(v.coord, v.order + 1), p.coordinates) + " = " +
                                 print(sys.rhs[s], p.coordinates));
            }
        }
    }
    red["solved"] = solved;
    out["reduction"] = red;

    const SystemEvaluator ev(sys);
    if (nb.t_end == 0.0) warnings.push_back("t_end = 0: trajectory has a single sample");
    Json runs = Json::array();
    for (std::size_t r = 0; r < nb.initial.size(); ++r) {
        const auto& init = nb.initial[r];
        if (init.size() != ev.dim()) {
            throw Error(ErrorKind::InputError, p.source + ": initial state " + std::to_string(r + 1) + " has " +
                                                   std::to_string(init.size()) + " entries, the reduced system needs " +
                                                   std::to_string(ev.dim()));
        }
        Trajectory traj;
        try {
            traj = integrate(ev, init, nb.t_end, nb.step);
        } catch (const Error& e) {
            throw Error(e.kind(), p.source + ": initial state " + std::to_string(r + 1) + ": " + e.detail());
        }
        Json run;
        run["initial"] = init;
        run["samples"] = traj.states.size();
        run["step"] = traj.step;
        run["nonfinite"] = traj.nonfinite;
        if (traj.nonfinite) {
            warnings.push_back("initial state " + std::to_string(r + 1) + ": integration stopped at a non-finite state");
            status.assertion(false);
        }
        Json drifts = Json::array();
        for (const auto& q : quantities) {
            const DriftReport d = drift(ev, traj, q.expr);
            const bool pass = d.max_abs <= tol_abs && d.max_rel <= tol_rel;
            status.assertion(pass);
            Json dj;
            dj["quantity"] = q.label;
            dj["initial_value"] = d.initial;
            dj["max_abs"] = d.max_abs;
            dj["max_rel"] = d.max_rel;
            dj["pass"] = pass;
            drifts.push_back(dj);
        }
        run["drift"] = drifts;
        runs.push_back(run);
    }
    out["runs"] = runs;
    return out;
}

Json ansatz_json(const AnsatzConfig& c) {
    Json a;
    a["zeta_degree"] = c.zeta_degree;
    a["eta_t_degree"] = c.eta_t_degree;
    a["eta_x_degree"] = c.eta_x_degree;
    a["inverse_coords"] = c.inverse_coords;
    a["zeta_depends_on_x"] = c.zeta_depends_on_x;
    a["frequencies"] = c.frequencies ? Json(rationals(*c.frequencies)) : Json("auto");
    a["gauge_t_degree"] = c.gauge_t_degree;
    a["gauge_x_degree"] = c.gauge_x_degree;
    a["gauge_v_degree"] = c.gauge_v_degree;
    return a;
}

}  // namespace

RunResult run_solve(const ProblemFile& p, const RunOptions& opt) {
    Stopwatch clock;
    Status status;
    Json warnings = Json::array();
    RunResult res;
    Json& r = res.report;
    r = header("solve", p, opt);

    const LagrangianSpec spec = load_spec(p);
    r["lagrangian"] = print(spec.lagrangian, p.coordinates);
    Json el = Json::array();
    for (const auto& e : euler_lagrange_all(spec, opt.max_order)) el.push_back(print(e, p.coordinates));
    r["euler_lagrange"] = el;

    AnsatzConfig cfg = p.ansatz;
    cfg.max_order = opt.max_order;
    r["ansatz"] = ansatz_json(cfg);
    const SymmetrySearch search = find_symmetries(spec, cfg);
    clock.lap("symmetries");

    Json freq;
    freq["linear_constant"] = search.frequency.linear_constant;
    freq["characteristic"] = search.frequency.characteristic;
    freq["detected"] = rationals(search.frequency.frequencies);
    freq["unresolved_roots"] = search.frequency.unresolved_roots;
    freq["used"] = rationals(search.ansatz.frequencies);
    r["frequency_analysis"] = freq;
    if (!cfg.frequencies && search.frequency.unresolved_roots) {
        warnings.push_back("characteristic polynomial has roots that are neither rational nor purely imaginary rational");
    }

    Json system;
    system["unknowns"] = search.system.unknown_count;
    system["equations"] = search.system.matrix.rows();
    system["rank"] = search.system.unknown_count - search.nullspace.size();
    system["nullity"] = search.nullspace.size();
    r["determining_system"] = system;

    std::vector<ConservedQuantity> charges;
    Json gens = Json::array();
    for (std::size_t k = 0; k < search.generators.size(); ++k) {
        const SymmetryGenerator& g = search.generators[k];
        ConservedQuantity q = noether_charge(spec, g, opt.max_order);
        verify_offshell(spec, q, opt.max_order);
        numeric_spot_check(spec, q, opt.seed + 0x9E3779B97F4A7C15ULL * (k + 1), 8, opt.max_order);
        status.verification(q.checked_offshell && q.checked_numeric);
        Json gj;
        gj["label"] = "I" + std::to_string(k + 1);
        gj["zeta"] = print(g.zeta, p.coordinates);
        Json eta = Json::array();
        for (const auto& e : g.eta) eta.push_back(print(e, p.coordinates));
        gj["eta"] = eta;
        gj["gauge"] = print(g.gauge, p.coordinates);
        gj["charge"] = print(q.expr, p.coordinates);
        gj["offshell"] = q.checked_offshell;
        gj["numeric_check"] = q.checked_numeric;
        gens.push_back(gj);
        charges.push_back(std::move(q));
    }
    r["generators"] = gens;
    clock.lap("charges");

    Json expected;
    if (p.expected_generators) {
        Json ec;
        ec["expected"] = *p.expected_generators;
        ec["actual"] = charges.size();
        ec["pass"] = static_cast<std::size_t>(*p.expected_generators) == charges.size();
        status.assertion(ec["pass"].get<bool>());
        expected["generators"] = ec;
    }
    Json ints = Json::array();
    for (const auto& field : p.expected_integrals) {
        const Expr candidate = parse_field(p, field, p.coordinates);
        const SpanMatch m = span_contains(charges, candidate);
        status.assertion(m.contained);
        Json ij;
        ij["integral"] = field.text;
        ij["contained"] = m.contained;
        ij["coefficients"] = m.contained ? rationals(m.coefficients) : Json::array();
        ij["constant"] = m.contained ? Json(m.constant.str()) : Json(nullptr);
        ints.push_back(ij);
    }
    expected["integrals"] = ints;
    r["expected"] = expected;
    clock.lap("span");

    if (p.numeric) {
        std::vector<Quantity> qs;
        for (std::size_t k = 0; k < charges.size(); ++k) qs.push_back({"I" + std::to_string(k + 1), charges[k].expr});
        r["numeric"] = numeric_section(p, spec, qs, opt, status, warnings);
        clock.lap("numeric");
    } else {
        r["numeric"] = nullptr;
    }
    finish(res, status, warnings, clock, opt);
    return res;
}

RunResult run_verify(const ProblemFile& p, const RunOptions& opt) {
    Stopwatch clock;
    Status status;
    Json warnings = Json::array();
    RunResult res;
    Json& r = res.report;
    r = header("verify", p, opt);
    if (!p.numeric) throw Error(ErrorKind::InputError, p.source + ": verify needs a [numeric] section");
    const LagrangianSpec spec = load_spec(p);
    r["lagrangian"] = print(spec.lagrangian, p.coordinates);
    std::vector<Quantity> qs;
    for (const auto& field : p.expected_integrals) qs.push_back({field.text, parse_field(p, field, p.coordinates)});
    if (qs.empty()) warnings.push_back("no expected integrals to check");
    r["numeric"] = numeric_section(p, spec, qs, opt, status, warnings);
    clock.lap("numeric");
    finish(res, status, warnings, clock, opt);
    return res;
}

RunResult run_transform(const ProblemFile& p, const RunOptions& opt) {
    Stopwatch clock;
    Status status;
    Json warnings = Json::array();
    RunResult res;
    Json& r = res.report;
    r = header("transform", p, opt);
    if (!p.transform) throw Error(ErrorKind::InputError, p.source + ": transform needs a [transform] section");
    const TransformBlock& tb = *p.transform;
    const auto& primed = tb.primed_coordinates;
    const LagrangianSpec spec = load_spec(p);
    if (spec.order > 2) {
        throw Error(ErrorKind::InputError, p.source + ":" + std::to_string(tb.line) +
                                               ": point transformations need a Lagrangian of order <= 2");
    }
    r["lagrangian"] = print(spec.lagrangian, p.coordinates);
    r["primed_coordinates"] = primed;

    PointTransformation tr;
    tr.t_of = parse_field(p, tb.t_of, primed);
    for (const auto& x : tb.x_of) tr.x_of.push_back(parse_field(p, x, primed));
    const int k = static_cast<int>(std::find(primed.begin(), primed.end(), tb.cyclic) - primed.begin());
    Json map;
    map["t"] = print(tr.t_of, primed);
    Json xs = Json::array();
    for (const auto& x : tr.x_of) xs.push_back(print(x, primed));
    map["x"] = xs;
    r["map"] = map;

    auto with_context = [&](auto&& fn) {
        try {
            return fn();
        } catch (const Error& e) {
            throw Error(e.kind(), p.source + ":" + std::to_string(tb.line) + ": " + e.detail());
        }
    };
    auto compare = [&](Json& section, const std::optional<Located>& field, const Expr& actual) {
        if (!field) return;
        const bool eq = parse_field(p, *field, primed) == actual;
        status.assertion(eq);
        section["expected"] = field->text;
        section["matches"] = eq;
    };

    const LagrangianSpec lp = with_context([&] { return transform_lagrangian(spec, tr, opt.max_order); });
    PrimedSubstitution sub = with_context([&] { return PrimedSubstitution(tr, opt.max_order); });
    Json lpj;
    lpj["time_factor"] = print(sub.time_factor(), primed);
    lpj["expr"] = print(lp.lagrangian, primed);
    compare(lpj, tb.expected_lagrangian, lp.lagrangian);
    r["transformed_lagrangian"] = lpj;
    clock.lap("transform");

    Expr lift;
    Json gj;
    if (tb.gauge) {
        const Expr g = parse_field(p, *tb.gauge, p.coordinates);
        gj["gauge"] = print(g, p.coordinates);
        gj["gauge_primed"] = print(with_context([&] { return sub.apply(g); }), primed);
        if (tb.lift) {
            lift = parse_field(p, *tb.lift, primed);
            gj["F_source"] = "given";
        } else {
            const auto derived = with_context([&] { return lift_gauge(g, tr, k, opt.max_order); });
            gj["F_source"] = derived ? "derived" : "underived";
            if (!derived) warnings.push_back("could not antidifferentiate the gauge term; F = 0 used");
            lift = derived.value_or(Expr());
        }
        const bool ok = with_context([&] { return gauge_lift_check(g, lift, tr, k, opt.max_order); });
        status.assertion(ok);
        gj["F"] = print(lift, primed);
        gj["lift_check"] = ok;
    } else {
        if (tb.lift) lift = parse_field(p, *tb.lift, primed);
        gj["gauge"] = nullptr;
        gj["F_source"] = tb.lift ? "given" : "none";
        gj["F"] = print(lift, primed);
        gj["lift_check"] = nullptr;
    }
    r["gauge_lift"] = gj;

    const LagrangianSpec lt = with_context([&] { return equivalent_lagrangian(lp, lift, opt.max_order); });
    Json ltj;
    ltj["expr"] = print(lt.lagrangian, primed);
    compare(ltj, tb.expected_equivalent, lt.lagrangian);
    const bool el_invariant = euler_lagrange_all(lt, opt.max_order) == euler_lagrange_all(lp, opt.max_order);
    status.verification(el_invariant);
    ltj["euler_lagrange_unchanged"] = el_invariant;
    const bool cyclic = is_cyclic(lt, k);
    status.assertion(cyclic);
    ltj["cyclic_coordinate"] = tb.cyclic;
    ltj["cyclic"] = cyclic;
    r["equivalent_lagrangian"] = ltj;

    const Expr mom = ostrogradsky_momentum(lt, k, opt.max_order);
    Json pj;
    pj["expr"] = print(mom, primed);
    compare(pj, tb.expected_momentum, mom);
    std::vector<Expr> unit(static_cast<std::size_t>(lt.n_coords));
    unit[static_cast<std::size_t>(k)] = Expr(1);
    const bool conserved = !cyclic || verify_offshell(lt, mom, unit, opt.max_order);
    status.verification(conserved);
    pj["offshell"] = cyclic ? Json(conserved) : Json(nullptr);
    r["momentum"] = pj;

    Json ints = Json::array();
    for (const auto& field : tb.integrals) {
        const Expr original = parse_field(p, field, p.coordinates);
        const Expr image = with_context([&] { return sub.apply(original); });
        const SpanMatch m = span_contains(std::vector<Expr>{mom}, image);
        status.assertion(m.contained);
        Json ij;
        ij["integral"] = field.text;
        ij["primed"] = print(image, primed);
        ij["contained"] = m.contained;
        ij["coefficients"] = m.contained ? rationals(m.coefficients) : Json::array();
        ij["constant"] = m.contained ? Json(m.constant.str()) : Json(nullptr);
        ints.push_back(ij);
    }
    r["integrals"] = ints;
    clock.lap("cyclic");
    finish(res, status, warnings, clock, opt);
    return res;
}

RunResult error_result(const std::string& command, const std::string& source, const Error& error) {
    RunResult res;
    res.exit_code = error.kind() == ErrorKind::VerificationFailure ? kVerificationFailure : kInputError;
    Json& r = res.report;
    r["format"] = 1;
    r["command"] = command;
    r["source"] = source;
    Json e;
    e["kind"] = std::string(to_string(error.kind()));
    e["message"] = error.detail();
    r["error"] = e;
    r["status"] = res.exit_code == kVerificationFailure ? "verification_failure" : "input_error";
    r["exit_code"] = res.exit_code;
    return res;
}

std::string render_machine(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool all_scalars(const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
}

void render(std::ostringstream& out, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [key, val] : v.items()) {
            if (val.is_object() && !val.empty()) {
                out << pad << key << ":\n";
                render(out, val, indent + 2);
            } else if (val.is_array() && !val.empty() && !all_scalars(val)) {
                out << pad << key << ":\n";
                render(out, val, indent + 2);
            } else if (val.is_array() && !val.empty() && val.size() > 1 &&
                       std::any_of(val.begin(), val.end(), [](const Json& x) {
                           return x.is_string() && x.get<std::string>().size() > 30;
                       })) {
                out << pad << key << ":\n";
                for (const auto& x : val) out << pad << "  - " << scalar(x) << "\n";
            } else if (val.is_array()) {
                out << pad << key << ": [";
                for (std::size_t i = 0; i < val.size(); ++i) out << (i ? ", " : "") << scalar(val[i]);
                out << "]\n";
            } else if (val.is_object()) {
                out << pad << key << ": {}\n";
            } else {
                out << pad << key << ": " << scalar(val) << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (item.is_structured()) {
                std::ostringstream inner;
                render(inner, item, indent + 2);
                std::string text = inner.str();
                // turn the first line's indentation into a list marker
                text.replace(static_cast<std::size_t>(indent), 2, "- ");
                out << text;
            } else {
                out << pad << "- " << scalar(item) << "\n";
            }
        }
    }
}

}  // namespace

std::string render_human(const Json& report) {
    std::ostringstream out;
    render(out, report, 0);
    return out.str();
}

}  // namespace noether::cli
