#include <cmath>
#include <numbers>

#include "doctest.h"
#include "random_models.hpp"

#include "pdmsusy/error.hpp"
#include "pdmsusy/susy1.hpp"

using namespace pdmsusy;

namespace {

ModelSpec first_order(const std::string& mass, const std::string& wm, double l1, double lo, double hi,
                      ParamEnv params = {}) {
    ModelSpec spec;
    spec.order = 1;
    spec.mass = MassFn(parse(mass), lo, hi);
    spec.superpotential = {SuperpotentialKind::Deformed, parse(wm)};
    spec.susy_constants = {l1};
    spec.params = std::move(params);
    return spec;
}

}  // namespace

TEST_SUITE("susy1") {

TEST_CASE("constant superpotential with unit mass") {
    const auto sys = susy1::build_first_order(first_order("1", "1.7", 0.0, -2, 2));
    const auto xs = interior_samples(-2, 2, 30);
    CHECK(sup_difference(sys.vtilde, constant(1.7 * 1.7), xs, {}) <= 1e-15);
    CHECK(sup_difference(sys.phi0, constant(1.7), xs, {}) == 0.0);
    CHECK(susy1::riccati_check_first(sys, xs) <= 1e-12);
    CHECK(sys.e0 == Complex(0.0));
}

TEST_CASE("delta V of the periodic example at pi/4") {
    const auto sys = susy1::build_first_order(first_order("1/4*sec(x)^2", "exp(i*x)", 1.0, 0.02, 1.55));
    const Complex dv = evaluate(sys.delta_v, std::numbers::pi / 4);
    CHECK(dv.real() == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(dv.imag() == doctest::Approx(2.0).epsilon(1e-13));
    // 4 i cos(pi/4) e^{i pi/4}
    const Complex expected = 4.0 * Complex(0, 1) * std::cos(std::numbers::pi / 4) * std::exp(Complex(0, std::numbers::pi / 4));
    CHECK(std::abs(dv - expected) <= 1e-14);
    CHECK(sys.e0 == Complex(-1.0));
}

TEST_CASE("unit mass with W_m = i x gives V = -x^2 + i") {
    const auto sys = susy1::build_first_order(first_order("1", "i*x", 0.0, -3, 3));
    CHECK(sup_difference(sys.vtilde, parse("-x^2 + i"), interior_samples(-3, 3, 40), {}) <= 1e-15);
}

TEST_CASE("charge coefficients") {
    auto c = susy1::charge_coefficients_first(first_order("1", "x^2 + i*x", 0.0, -1, 1));
    const auto xs = interior_samples(-1, 1, 20);
    CHECK(sup_difference(c.lead, constant(1.0), xs, {}) == 0.0);
    CHECK(sup_difference(c.zeroth, parse("x^2 + i*x"), xs, {}) == 0.0);

    c = susy1::charge_coefficients_first(first_order("4", "x^2 + i*x", 0.0, -1, 1));
    CHECK(sup_difference(c.lead, constant(0.5), xs, {}) == 0.0);
    CHECK(sup_difference(c.zeroth, parse("x^2 + i*x"), xs, {}) == 0.0);

    const ParamEnv env{{"alpha", 1.3}};
    const auto window = interior_samples(0.02, 1.55, 200);
    c = susy1::charge_coefficients_first(first_order("1/4*sec(x)^2", "exp(i*alpha*x)", 1.0, 0.02, 1.55, env));
    CHECK(sup_difference(c.lead, parse("2*cos(x)"), window, env) <= 1e-13);
    CHECK(sup_difference(c.zeroth, parse("exp(i*alpha*x) - sin(x)"), window, env) <= 1e-12);
}

TEST_CASE("riccati residual on the periodic example and under a shift") {
    const auto spec = first_order("1/4*sec(x)^2", "exp(i*x)", 1.0, 0.02, 1.55);
    auto sys = susy1::build_first_order(spec);
    const auto xs = interior_samples(0.05, 1.5, 100);
    CHECK(susy1::riccati_check_first(sys, xs) <= 1e-9);

    sys.vtilde = sys.vtilde + 0.1;
    CHECK(susy1::riccati_check_first(sys, xs) == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("delta V identity and riccati on random pt-symmetric models") {
    testing_models::ModelFactory factory(101);
    const auto xs = interior_samples(-1, 1, 100);
    for (int k = 0; k < 20; ++k) {
        const auto model = factory.next();
        ModelSpec spec;
        spec.mass = model.m;
        spec.superpotential = {SuperpotentialKind::Deformed, model.w};
        spec.susy_constants = {factory.uniform(-2, 2)};
        const auto sys = susy1::build_first_order(spec);
        CAPTURE(model.mass);
        CAPTURE(model.wm);
        CHECK(sup_difference(sys.vtilde - pt_image(sys.vtilde), sys.delta_v, xs, {}) <= 1e-10);
        CHECK(susy1::riccati_check_first(sys, xs) <= 1e-9);
        CHECK(sys.e0 == -spec.susy_constants[0]);
    }
}

TEST_CASE("order mismatch is rejected") {
    ModelSpec spec = first_order("1", "x", 0.0, -1, 1);
    spec.order = 2;
    spec.susy_constants = {0.0, 0.0};
    CHECK_THROWS_AS(susy1::build_first_order(spec), ConfigError);
    CHECK_THROWS_AS(susy1::charge_coefficients_first(spec), ConfigError);
}

TEST_CASE("log-derivative integration reproduces known zero modes") {
    std::vector<double> xs;
    for (int k = 0; k <= 400; ++k) xs.push_back(-4.0 + 8.0 * k / 400);

    // phi = -x gives exp(-x^2/2).
    auto psi = susy1::integrate_log_derivative(parse("-x"), xs, {});
    double err = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) err = std::max(err, std::abs(psi[k] - std::exp(-xs[k] * xs[k] / 2)));
    CHECK(err <= 1e-8);

    // Complex log-derivative: psi = exp(i x - x^2/2).
    psi = susy1::integrate_log_derivative(parse("i - x"), xs, {});
    err = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k)
        err = std::max(err, std::abs(psi[k] - std::exp(Complex(-xs[k] * xs[k] / 2, xs[k]))));
    CHECK(err <= 1e-8);

    // Midpoint between nodes.
    std::vector<double> even;
    for (int k = 0; k < 400; ++k) even.push_back(-1.0 + 2.0 * k / 399);
    psi = susy1::integrate_log_derivative(constant(1.0), even, {});
    for (std::size_t k = 0; k < even.size(); k += 37) CHECK(std::abs(psi[k] - std::exp(even[k])) <= 1e-10);
}

TEST_CASE("zero mode report flags") {
    std::vector<double> xs;
    for (int k = 0; k <= 400; ++k) xs.push_back(-6.0 + 12.0 * k / 400);

    auto r = susy1::zero_mode(parse("-x"), xs, {});
    CHECK(r.normalizable_on_window);
    REQUIRE(r.pt_defect.has_value());
    CHECK(*r.pt_defect <= 1e-10);

    r = susy1::zero_mode(parse("x"), xs, {});
    CHECK_FALSE(r.normalizable_on_window);

    // PT-symmetric log-derivative: phi(x) = -conj(phi(-x)).
    r = susy1::zero_mode(parse("i - x"), xs, {});
    REQUIRE(r.pt_defect.has_value());
    CHECK(*r.pt_defect <= 1e-10);

    std::vector<double> shifted(xs.begin(), xs.end());
    for (double& x : shifted) x += 0.5;
    CHECK_FALSE(susy1::zero_mode(parse("-x"), shifted, {}).pt_defect.has_value());
}

TEST_CASE("harmonic oscillator zero mode from the first-order system") {
    // m = 1, W_m = -x: phi0 = -x, so psi0 = exp(-x^2/2).
    const auto sys = susy1::build_first_order(first_order("1", "-x", 0.0, -5, 5));
    const auto xs = interior_samples(-5, 5, 50);
    CHECK(susy1::riccati_check_first(sys, xs) <= 1e-12);
    std::vector<double> nodes;
    for (int k = 0; k <= 200; ++k) nodes.push_back(-5.0 + 10.0 * k / 200);
    CHECK(susy1::zero_mode(sys.phi0, nodes, {}).normalizable_on_window);
}

}  // TEST_SUITE
