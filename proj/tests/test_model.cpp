#include <cmath>
#include <numbers>

#include "doctest.h"
#include "random_models.hpp"

#include "pdmsusy/error.hpp"
#include "pdmsusy/model.hpp"

using namespace pdmsusy;

TEST_SUITE("model") {

TEST_CASE("deformation recovers the periodic superpotential") {
    const Expr w = parse("exp(i*alpha*x) - sin(x)");
    const Expr expected = parse("exp(i*alpha*x)");
    const auto xs = interior_samples(0.01, 1.55, 1000);
    for (double alpha : {0.5, 1.0, 2.0}) {
        const ParamEnv env{{"alpha", alpha}};
        const MassFn quarter_sec2(parse("1/4*sec(x)^2"), 0.01, 1.55);
        const MassFn sec(parse("sec(x)"), 0.01, 1.55);
        CHECK(sup_difference(mass_deformed_superpotential(w, quarter_sec2, 1, env), expected, xs, env) <= 1e-12);
        CHECK(sup_difference(mass_deformed_superpotential(w, sec, 2, env), expected, xs, env) <= 1e-12);
    }
}

TEST_CASE("constant mass leaves the superpotential unchanged") {
    const Expr w = parse("x^3 - i*cos(x)");
    const auto xs = interior_samples(-2.0, 2.0, 50);
    for (int n : {1, 2, 5}) {
        CHECK(sup_difference(mass_deformed_superpotential(w, MassFn(constant(1.0), -2, 2), n), w, xs, {}) == 0.0);
        CHECK(sup_difference(mass_deformed_superpotential(w, MassFn(constant(4.0), -2, 2), n), w, xs, {}) == 0.0);
    }
}

TEST_CASE("deformation and its inverse compose to the identity") {
    testing_models::ModelFactory factory(3);
    const auto xs = interior_samples(-1.0, 1.0, 60);
    for (int k = 0; k < 10; ++k) {
        const auto model = factory.next();
        for (int n : {1, 2, 3}) {
            const Expr w = undeformed_superpotential(model.w, model.m, n);
            CHECK(sup_difference(mass_deformed_superpotential(w, model.m, n), model.w, xs, {}) <= 1e-12);
        }
    }
}

TEST_CASE("deformation rejects invalid masses and orders") {
    const Expr w = parse("x");
    CHECK_THROWS_AS(mass_deformed_superpotential(w, MassFn(parse("x"), -1, 1), 1), ConfigError);
    CHECK_THROWS_AS(mass_deformed_superpotential(w, MassFn(parse("1 + i*x"), -1, 1), 1), ConfigError);
    CHECK_THROWS_AS(mass_deformed_superpotential(w, MassFn(), 0), ConfigError);
    // sec x changes sign across pi/2.
    CHECK_THROWS_AS(mass_deformed_superpotential(w, MassFn(parse("sec(x)"), 0.0, 2.0), 1), ConfigError);
    CHECK_THROWS_AS(MassFn(constant(1.0), 1.0, 1.0), ConfigError);
}

TEST_CASE("rho examples") {
    const auto xs = interior_samples(-1.0, 1.0, 30);
    CHECK(sup_abs(rho(MassFn(constant(2.5), -1, 1), 0.3, 0.7), xs, {}) == 0.0);

    const Complex r = evaluate(rho(MassFn(parse("sec(x)"), -1.5, 1.5), 0.0, 0.0), std::numbers::pi / 4);
    CHECK(r.real() == doctest::Approx(3.0 * std::sqrt(2.0) / 4.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r.real() == doctest::Approx(0.353553).epsilon(1e-6));
}

TEST_CASE("rho with a = 0, b = -1 vanishes for every mass") {
    testing_models::ModelFactory factory(17);
    const auto xs = interior_samples(-1.0, 1.0, 40);
    for (int k = 0; k < 20; ++k) {
        const MassFn m(parse(factory.even_mass()), -1.0, 1.0);
        CHECK(sup_abs(rho(m, 0.0, -1.0), xs, {}) == 0.0);
    }
}

TEST_CASE("pt image examples") {
    const auto xs = interior_samples(-2.0, 2.0, 41);
    const ParamEnv env{{"alpha", 1.3}};
    const Expr wave = parse("exp(i*alpha*x)");
    CHECK(sup_difference(pt_image(wave), wave, xs, env) <= 1e-15);
    CHECK(sup_difference(pt_image(parse("x")), parse("-x"), xs, env) == 0.0);
    const Expr f = parse("x^2 + i*x");
    CHECK(sup_difference(pt_image(f), f, xs, env) == 0.0);
}

TEST_CASE("pt image is an involution and maps derivatives with a sign") {
    testing_models::ModelFactory factory(5);
    const auto xs = interior_samples(-1.0, 1.0, 40);
    for (int k = 0; k < 10; ++k) {
        const Expr f = parse(factory.pt_superpotential()) * parse("(1 + x + i*x^2)");
        CHECK(sup_difference(pt_image(pt_image(f)), f, xs, {}) == 0.0);
        // (PT f)' = -PT(f')
        CHECK(sup_difference(differentiate(pt_image(f)), -pt_image(differentiate(f)), xs, {}) <= 1e-13);
    }
}

TEST_CASE("symmetry report examples") {
    const auto xs = chebyshev_samples(-3.0, 3.0);
    double max_abs_x = 0.0;
    for (double x : xs) max_abs_x = std::max(max_abs_x, std::abs(x));

    ModelSpec spec;
    spec.mass = MassFn(parse("1/(1 + x^2)"), -3, 3);
    spec.superpotential = {SuperpotentialKind::Deformed, parse("x^2 + i*x")};
    spec.susy_constants = {0.0};
    SymmetryReport r = symmetry_report(spec, xs);
    CHECK(r.mass_parity_defect <= 1e-13);
    CHECK(r.wm_pt_defect <= 1e-13);

    spec.mass = MassFn(parse("1 + x"), -3, 3);
    r = symmetry_report(spec, xs);
    CHECK(r.mass_parity_defect == doctest::Approx(2.0 * max_abs_x).epsilon(1e-14));

    spec.mass = MassFn(constant(1.0), -3, 3);
    spec.superpotential = {SuperpotentialKind::Deformed, parse("x")};
    r = symmetry_report(spec, xs);
    CHECK(r.wm_pt_defect == doctest::Approx(2.0 * max_abs_x).epsilon(1e-14));

    CHECK_THROWS_AS(symmetry_report(spec, chebyshev_samples(0.02, 1.55)), ConfigError);
}

TEST_CASE("pt-symmetric inputs give pt-symmetric deformed superpotentials") {
    testing_models::ModelFactory factory(23);
    const auto xs = chebyshev_samples(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const auto model = factory.next();
        for (int n : {1, 2, 3, 4}) {
            // W = g + (N/2)(m^(-N/2))' for a PT-symmetric g.
            const Expr w = model.w + (0.5 * n) * differentiate(pow(model.m.expr(), -0.5 * n));
            ModelSpec spec;
            spec.order = n;
            spec.mass = model.m;
            spec.superpotential = {SuperpotentialKind::ConstantMass, w};
            spec.susy_constants.assign(static_cast<std::size_t>(n), 0.0);
            const SymmetryReport r = symmetry_report(spec, xs);
            CHECK(r.wm_pt_defect <= 1e-12);
            CHECK(r.mass_parity_defect <= 1e-12);
            CHECK(sup_difference(spec.deformed_superpotential(), model.w, xs, {}) <= 1e-12);
        }
    }
}

TEST_CASE("model spec validation") {
    ModelSpec spec;
    spec.order = 2;
    spec.susy_constants = {1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.susy_constants = {1.0, Complex(0.0, 1.0)};
    CHECK_NOTHROW(spec.validate());
    CHECK_FALSE(spec.real_constants());
    CHECK(spec.l(0) == Complex(1.0));
    CHECK(spec.l(2) == Complex(0.0, 1.0));
    spec.order = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("sampling helpers") {
    const auto cheb = chebyshev_samples(-1.0, 1.0, 9);
    CHECK(cheb.size() == 9);
    CHECK(std::is_sorted(cheb.begin(), cheb.end()));
    CHECK(cheb.front() > -1.0);
    CHECK(cheb.back() < 1.0);
    const auto inner = interior_samples(0.0, 1.0, 3);
    CHECK(inner[1] == 0.5);
    CHECK(symmetric_about_zero(-2.0, 2.0));
    CHECK_FALSE(symmetric_about_zero(-2.0, 2.1));
}

}  // TEST_SUITE
