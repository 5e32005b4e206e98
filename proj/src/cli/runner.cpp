#include "pdmsusy/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>

#include "pdmsusy/discrete/convergence.hpp"
#include "pdmsusy/discrete/operators.hpp"
#include "pdmsusy/discrete/residuals.hpp"
#include "pdmsusy/error.hpp"
#include "pdmsusy/susy1.hpp"
#include "pdmsusy/susy2.hpp"
#include "pdmsusy/susyn.hpp"
#include "report_json.hpp"

namespace pdmsusy::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Rethrows library errors with the stage name prefixed, keeping the category.
template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError("stage '" + stage + "': " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError("stage '" + stage + "': " + e.what());
    }
}

class Timer {
public:
    explicit Timer(json& sink) : sink_(sink) {}

    template <typename Fn>
    auto operator()(const std::string& stage, Fn&& fn) -> decltype(fn()) {
        const auto start = Clock::now();
        struct Record {
            json& sink;
            const std::string& stage;
            Clock::time_point start;
            ~Record() { sink[stage] = std::chrono::duration<double>(Clock::now() - start).count(); }
        } record{sink_, stage, start};
        return staged(stage, std::forward<Fn>(fn));
    }

private:
    json& sink_;
};

struct CheckOutcome {
    std::string status;  // pass | fail | skipped
    double value = 0.0;
    std::optional<double> tolerance;
    std::string reason;
    json details = json::object();
};

CheckOutcome skipped(std::string reason) {
    CheckOutcome c;
    c.status = "skipped";
    c.reason = std::move(reason);
    return c;
}

CheckOutcome bounded(double value, double tolerance, json details = json::object()) {
    CheckOutcome c;
    c.value = value;
    c.tolerance = tolerance;
    c.status = value <= tolerance ? "pass" : "fail";
    c.details = std::move(details);
    return c;
}

json check_json(const CheckOutcome& c, const std::string& name) {
    json j{{"name", name}, {"status", c.status}};
    if (c.status != "skipped") {
        j["value"] = c.value;
        if (c.tolerance) j["tolerance"] = *c.tolerance;
    }
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (!c.details.empty()) j["details"] = c.details;
    return j;
}

// The whole model pipeline for one config; expensive parts are built on demand.
class Pipeline {
public:
    explicit Pipeline(const RunConfig& cfg, json& timing) : cfg_(cfg), time_(timing) {
        spec_ = time_("model", [&] {
            ModelSpec spec = cfg_.model();
            spec.validate();
            spec.mass.validate(spec.params);
            return spec;
        });
        wm_ = time_("superpotential", [&] { return spec_.deformed_superpotential(); });
        samples_ = interior_samples(cfg_.grid.xmin, cfg_.grid.xmax, 200);
        symmetric_ = symmetric_about_zero(cfg_.grid.xmin, cfg_.grid.xmax);
        if (spec_.order == 1) {
            s1_ = time_("first_order", [&] { return susy1::build_first_order(spec_); });
        } else if (spec_.order == 2) {
            s2_ = time_("second_order", [&] { return susy2::build_second_order(spec_); });
        }
    }

    const RunConfig& cfg() const { return cfg_; }
    const ModelSpec& spec() const { return spec_; }
    const Expr& wm() const { return wm_; }
    const ParamEnv& env() const { return spec_.params; }
    bool symmetric() const { return symmetric_; }
    bool has_potential() const { return s1_ || s2_; }
    const std::optional<susy1::FirstOrderSystem>& first() const { return s1_; }
    const std::optional<susy2::SecondOrderSystem>& second() const { return s2_; }

    const Expr& vtilde() const { return s1_ ? s1_->vtilde : s2_->vtilde; }
    const Expr& delta_v() const { return s1_ ? s1_->delta_v : s2_->delta_v; }

    double sup_diff(const Expr& a, const Expr& b) const { return sup_difference(a, b, samples_, env()); }

    std::vector<Complex> closed_form() const {
        if (s1_) return {s1_->e0};
        if (s2_) return {s2_->e0, s2_->e1};
        return {};
    }

    discrete::Grid grid() const { return {cfg_.grid.xmin, cfg_.grid.xmax, cfg_.grid.points}; }

    const discrete::Spectrum& spectrum() {
        if (!spectrum_) {
            spectrum_ = time_("spectrum", [&] {
                return discrete::spectrum(discrete::assemble_hamiltonian(spec_.mass, vtilde(), grid(), env()));
            });
        }
        return *spectrum_;
    }

    std::map<std::string, discrete::ConvergenceResult> convergence(int refinements) {
        auto it = convergence_.find(refinements);
        if (it != convergence_.end()) return it->second;
        const auto coeffs = susyn::charge_coefficients(spec_);
        const auto grids = discrete::refinement_sequence(grid(), refinements);
        auto study = time_("convergence", [&] {
            return discrete::convergence_study(
                [&](const discrete::Grid& g) {
                    const auto h = discrete::assemble_hamiltonian(spec_.mass, vtilde(), g, env());
                    const auto c = discrete::assemble_charge(coeffs, g, env());
                    const auto p = discrete::parity_matrix(g);
                    return discrete::constraint_residuals(h, c, p, spec_.susy_constants, spec_.order);
                },
                grids);
        });
        convergence_[refinements] = study;
        return study;
    }

private:
    const RunConfig& cfg_;
    Timer time_;
    ModelSpec spec_;
    Expr wm_;
    std::vector<double> samples_;
    bool symmetric_ = false;
    std::optional<susy1::FirstOrderSystem> s1_;
    std::optional<susy2::SecondOrderSystem> s2_;
    std::optional<discrete::Spectrum> spectrum_;
    std::map<int, std::map<std::string, discrete::ConvergenceResult>> convergence_;
};

constexpr const char* kAsymmetric = "domain not symmetric about 0; parity is undefined on this window";
constexpr const char* kNoPotential = "no closed-form potential for N >= 3 (u-coefficients are not available)";

double nearest_distance(Complex target, const std::vector<Complex>& values) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex v : values) best = std::min(best, std::abs(v - target));
    return best;
}

json slope_json(const discrete::ConvergenceResult& r) {
    json j{{"spacings", r.spacings}, {"residuals", r.residuals}, {"at_floor", r.at_floor}};
    if (!r.at_floor) j["order"] = r.order;
    return j;
}

CheckOutcome slope_check(const discrete::ConvergenceResult& r, const RunConfig& cfg) {
    CheckOutcome c;
    c.details = slope_json(r);
    if (r.at_floor) {
        c.status = "pass";
        c.reason = "converged to floor";
        return c;
    }
    c.value = r.order;
    c.details["window"] = {cfg.tol("slope_min"), cfg.tol("slope_max")};
    c.status = r.order >= cfg.tol("slope_min") && r.order <= cfg.tol("slope_max") ? "pass" : "fail";
    return c;
}

std::optional<std::string> discrete_unsupported(const Pipeline& p) {
    if (!p.has_potential()) return std::string(kNoPotential);
    if (!p.symmetric()) return std::string(kAsymmetric);
    return std::nullopt;
}

CheckOutcome evaluate_check(const std::string& name, Pipeline& p) {
    const RunConfig& cfg = p.cfg();
    const double identity = cfg.tol("identity");
    const int order = p.spec().order;

    if (name == "symmetry") {
        if (!p.symmetric()) return skipped(kAsymmetric);
        const auto samples = chebyshev_samples(cfg.grid.xmin, cfg.grid.xmax);
        const SymmetryReport r = symmetry_report(p.spec(), samples);
        return bounded(std::max(r.mass_parity_defect, r.wm_pt_defect), cfg.tol("symmetry"),
                       {{"mass_parity_defect", r.mass_parity_defect}, {"wm_pt_defect", r.wm_pt_defect}});
    }

    if (name == "riccati") {
        if (!p.has_potential()) return skipped(kNoPotential);
        const auto samples = interior_samples(cfg.grid.xmin, cfg.grid.xmax, 100);
        if (const auto& s1 = p.first()) {
            const double r = susy1::riccati_check_first(*s1, samples);
            return bounded(r, identity, {{"phi0_e0", r}});
        }
        const auto& s2 = *p.second();
        const double r1 = discrete::riccati_residual(s2.m, s2.vtilde, s2.phi1, s2.e1, samples, p.env());
        const double r2 = discrete::riccati_residual(s2.m, s2.vtilde, s2.phi2, s2.e0, samples, p.env());
        return bounded(std::max(r1, r2), identity, {{"phi1_e1", r1}, {"phi2_e0", r2}});
    }

    if (name == "delta_v") {
        if (!p.has_potential()) return skipped(kNoPotential);
        if (!p.symmetric()) return skipped(kAsymmetric);
        return bounded(p.sup_diff(p.vtilde() - pt_image(p.vtilde()), p.delta_v()), identity);
    }

    if (name == "delta_u") {
        if (order != 2) return skipped("closed-form u-coefficients exist for order 2 only");
        if (!p.symmetric()) return skipped(kAsymmetric);
        const auto& s2 = *p.second();
        const auto du = susyn::delta_u_coefficients(s2.wm, s2.m, 2, s2.u0);
        return bounded(p.sup_diff(s2.u0 - pt_image(s2.u0), du.delta_u_nm2), identity);
    }

    if (name == "u0_routes") {
        if (order != 2) return skipped("u0 exists for order 2 only");
        const auto& s2 = *p.second();
        const Complex theta = s2.l2 - s2.l1 * s2.l1 / 4.0;
        return bounded(p.sup_diff(s2.u0, susy2::u0_integrated(s2.f, s2.wm, s2.m, theta)), identity);
    }

    if (name == "reductions") {
        if (!p.has_potential()) return skipped("reductions compare against the order 1 and 2 pipelines only");
        const MassFn& m = p.spec().mass;
        const Complex lambda = -p.spec().l(1);
        const Expr u = p.second() ? p.second()->u0 : constant(0.0);
        const double dv = p.sup_diff(susyn::delta_v_general(p.wm(), m, order), p.delta_v());
        const double pot = p.sup_diff(susyn::potential_general(p.wm(), m, u, order, lambda), p.vtilde());
        return bounded(std::max(dv, pot), identity, {{"delta_v", dv}, {"potential", pot}});
    }

    if (name == "eigenvalues") {
        const auto poly = susyn::energy_roots(p.spec().susy_constants);
        json details{{"roots", to_json(poly.roots)}, {"non_real_constants", !p.spec().real_constants()}};
        if (order > 2) {
            details["scaled_residual"] = poly.scaled_residual();
            return bounded(poly.scaled_residual(), identity, std::move(details));
        }
        const auto closed = p.closed_form();
        double worst = 0.0;
        for (const Complex e : closed) worst = std::max(worst, nearest_distance(e, poly.roots));
        details["closed_form"] = to_json(closed);
        return bounded(worst, identity, std::move(details));
    }

    if (name == "spectrum_match") {
        if (!p.has_potential()) return skipped(kNoPotential);
        const auto& ev = p.spectrum().eigenvalues;
        json distances = json::array();
        double worst = 0.0;
        for (const Complex e : p.closed_form()) {
            const double d = nearest_distance(e, ev);
            distances.push_back(d);
            worst = std::max(worst, d);
        }
        CheckOutcome c = bounded(worst, cfg.tol("eigen_match"), {{"distances", distances}});
        c.details["note"] = "meaningful only when the zero modes are confined inside the window";
        return c;
    }

    if (name == "pseudo" || name == "cpt" || name == "susy") {
        if (auto why = discrete_unsupported(p)) return skipped(*why);
        return slope_check(p.convergence(2).at(name), cfg);
    }

    if (name == "convergence") {
        if (auto why = discrete_unsupported(p)) return skipped(*why);
        const auto study = p.convergence(2);
        CheckOutcome c;
        c.status = "pass";
        double lowest = std::numeric_limits<double>::infinity();
        for (const char* key : {"pseudo", "cpt", "susy"}) {
            const CheckOutcome part = slope_check(study.at(key), cfg);
            c.details[key] = part.details;
            if (part.status != "pass") c.status = "fail";
            if (!study.at(key).at_floor) lowest = std::min(lowest, study.at(key).order);
        }
        c.value = std::isfinite(lowest) ? lowest : 0.0;
        return c;
    }

    if (name == "conjugate_closure") {
        if (!p.has_potential()) return skipped(kNoPotential);
        return bounded(discrete::conjugate_closure(p.spectrum()), cfg.tol("closure"));
    }

    throw ConfigError("unknown check '" + name + "'");
}

json model_echo(const RunConfig& cfg, const Pipeline& p) {
    json j{
        {"order", cfg.order},
        {"mass", cfg.mass_source},
        {"superpotential",
         {{"kind", cfg.superpotential_kind == SuperpotentialKind::ConstantMass ? "constant_mass" : "deformed"},
          {"expr", cfg.superpotential_source}}},
        {"deformed_superpotential", p.wm().to_string()},
        {"params", to_json(cfg.params)},
        {"susy_constants", to_json(cfg.susy_constants)},
        {"non_real_constants", !p.spec().real_constants()},
        {"ambiguity", {{"a", cfg.ambiguity.a}, {"b", cfg.ambiguity.b}}},
        {"grid", {{"xmin", cfg.grid.xmin}, {"xmax", cfg.grid.xmax}, {"points", cfg.grid.points}}},
        {"boundary", cfg.boundary},
    };
    return j;
}

json symmetry_section(const Pipeline& p) {
    if (!p.symmetric()) return {{"skipped", kAsymmetric}};
    const auto samples = chebyshev_samples(p.cfg().grid.xmin, p.cfg().grid.xmax);
    SymmetryReport r = symmetry_report(p.spec(), samples);
    if (p.has_potential()) {
        r.function_defects["delta_v"] = sup_abs(p.vtilde() - pt_image(p.vtilde()), samples, p.env());
    }
    if (const auto& s2 = p.second()) r.function_defects["delta_u0"] = sup_abs(s2->u0 - pt_image(s2->u0), samples, p.env());
    return {{"mass_parity_defect", r.mass_parity_defect},
            {"wm_pt_defect", r.wm_pt_defect},
            {"function_defects", r.function_defects}};
}

json eigen_section(const Pipeline& p) {
    json j{{"closed_form", to_json(p.closed_form())}};
    if (const auto& s2 = p.second()) {
        j["delta"] = to_json(s2->delta);
        j["real_spectrum"] = s2->real_spectrum;
        // Reducibility of the charge is identified with l1^2 >= 4 l2; reported as a flag only.
        j["reducible"] = s2->real_spectrum;
    }
    if (p.spec().order >= 3) j["roots"] = to_json(susyn::energy_roots(p.spec().susy_constants).roots);
    return j;
}

json zero_mode_section(const Pipeline& p) {
    const auto nodes = p.grid().nodes();
    auto describe = [&](const Expr& phi) {
        const auto z = susy1::zero_mode(phi, nodes, p.env());
        json j{{"normalizable_on_window", z.normalizable_on_window},
               {"normalization", "psi(midpoint) = 1"}};
        if (z.pt_defect) j["pt_defect"] = *z.pt_defect;
        return j;
    };
    if (const auto& s1 = p.first()) return {{"psi0", describe(s1->phi0)}};
    if (const auto& s2 = p.second()) return {{"psi1", describe(s2->phi1)}, {"psi2", describe(s2->phi2)}};
    return json::object();
}

}  // namespace

RunResult run(const RunConfig& config) {
    json timing = json::object();
    Pipeline p(config, timing);
    Timer time(timing);

    RunResult result;
    json& report = result.report;
    report["model"] = model_echo(config, p);
    report["symmetry"] = time("symmetry", [&] { return symmetry_section(p); });
    report["eigenvalues"] = time("eigenvalues", [&] { return eigen_section(p); });
    report["zero_modes"] = time("zero_modes", [&] { return zero_mode_section(p); });

    report["checks"] = json::array();
    bool all_pass = true;
    for (const auto& name : config.checks) {
        const CheckOutcome c = time("check:" + name, [&] { return evaluate_check(name, p); });
        if (c.status == "fail") all_pass = false;
        report["checks"].push_back(check_json(c, name));
    }
    report["tolerances"] = config.tolerances;
    report["passed"] = all_pass;
    report[kTimingKey] = timing;
    result.exit_code = all_pass ? kExitPass : kExitCheckFailed;
    return result;
}

RunResult run_spectrum(const RunConfig& config) {
    json timing = json::object();
    Pipeline p(config, timing);
    if (!p.has_potential()) throw ConfigError("stage 'spectrum': " + std::string(kNoPotential));

    RunResult result;
    json& report = result.report;
    report["model"] = model_echo(config, p);
    report["eigenvalues"] = eigen_section(p);
    const auto& s = p.spectrum();
    report["spectrum"] = {{"eigenvalues", to_json(s.eigenvalues)},
                          {"count", s.eigenvalues.size()},
                          {"conjugate_closure", discrete::conjugate_closure(s)}};
    report[kTimingKey] = timing;
    return result;
}

RunResult run_convergence(const RunConfig& config, int refinements) {
    if (refinements < 2) throw ConfigError("--refinements must be >= 2 (three grids at least)");
    json timing = json::object();
    Pipeline p(config, timing);
    if (auto why = discrete_unsupported(p)) throw ConfigError("stage 'convergence': " + *why);

    RunResult result;
    json& report = result.report;
    report["model"] = model_echo(config, p);
    const auto study = p.convergence(refinements);
    bool all_pass = true;
    report["checks"] = json::array();
    for (const char* key : {"pseudo", "cpt", "susy"}) {
        const CheckOutcome c = slope_check(study.at(key), config);
        if (c.status == "fail") all_pass = false;
        report["checks"].push_back(check_json(c, key));
    }
    report["passed"] = all_pass;
    report[kTimingKey] = timing;
    result.exit_code = all_pass ? kExitPass : kExitCheckFailed;
    return result;
}

void emit_curves(const RunConfig& config, const std::filesystem::path& path) {
    json timing = json::object();
    Pipeline p(config, timing);
    if (!p.has_potential()) throw ConfigError("stage 'curves': " + std::string(kNoPotential));

    const auto nodes = p.grid().nodes();
    const ParamEnv& env = p.env();
    const Expr& mass = p.spec().mass.expr();

    std::vector<std::vector<Complex>> extra;
    std::vector<Complex> psi0;
    if (const auto& s1 = p.first()) {
        psi0 = susy1::integrate_log_derivative(s1->phi0, nodes, env);
    } else {
        const auto& s2 = *p.second();
        psi0 = susy1::integrate_log_derivative(s2.ground_logderiv(), nodes, env);
        extra.push_back(evaluate(s2.u0, nodes, env));
        extra.push_back(susy1::integrate_log_derivative(s2.phi1, nodes, env));
        extra.push_back(susy1::integrate_log_derivative(s2.phi2, nodes, env));
    }

    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write curves to '" + path.string() + "'");
    out << "x,re_m,re_wm,im_wm,re_v,im_v,re_psi0,im_psi0";
    if (!extra.empty()) out << ",re_u0,im_u0,re_psi1,im_psi1,re_psi2,im_psi2";
    out << '\n';

    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes[i];
        const Complex wm = evaluate(p.wm(), x, env);
        const Complex v = evaluate(p.vtilde(), x, env);
        put(x);
        for (double value : {evaluate(mass, x, env).real(), wm.real(), wm.imag(), v.real(), v.imag(),
                             psi0[i].real(), psi0[i].imag()}) {
            out << ',';
            put(value);
        }
        for (const auto& column : extra) {
            out << ',';
            put(column[i].real());
            out << ',';
            put(column[i].imag());
        }
        out << '\n';
    }
    if (!out) throw ConfigError("failed writing curves to '" + path.string() + "'");
}

}  // namespace pdmsusy::cli
