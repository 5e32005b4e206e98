#include <cmath>
#include <random>

#include "doctest.h"
#include "random_models.hpp"

#include "pdmsusy/error.hpp"
#include "pdmsusy/susy1.hpp"
#include "pdmsusy/susy2.hpp"
#include "pdmsusy/susyn.hpp"

using namespace pdmsusy;

namespace {

ModelSpec spec_of(const testing_models::RandomModel& model, std::vector<Complex> l) {
    ModelSpec spec;
    spec.order = static_cast<int>(l.size());
    spec.mass = model.m;
    spec.superpotential = {SuperpotentialKind::Deformed, model.w};
    spec.susy_constants = std::move(l);
    return spec;
}

}  // namespace

TEST_SUITE("susyn") {

TEST_CASE("general formulas reduce to the first- and second-order ones") {
    testing_models::ModelFactory factory(303);
    const auto xs = interior_samples(-1, 1, 80);
    for (int k = 0; k < 15; ++k) {
        const auto model = factory.next();
        CAPTURE(model.mass);
        CAPTURE(model.wm);
        const Complex l1 = factory.uniform(-3, 3);
        const Complex l2 = factory.uniform(-2, 2);

        const auto s1 = susy1::build_first_order(spec_of(model, {l1}));
        CHECK(sup_difference(susyn::potential_general(s1.wm, s1.m, constant(0.0), 1, -l1), s1.vtilde, xs, {}) <= 1e-11);
        CHECK(sup_difference(susyn::delta_v_general(s1.wm, s1.m, 1), s1.delta_v, xs, {}) <= 1e-12);

        const auto s2 = susy2::build_second_order(spec_of(model, {l1, l2}));
        CHECK(sup_difference(susyn::potential_general(s2.wm, s2.m, s2.u0, 2, -l1), s2.vtilde, xs, {}) <= 1e-11);
        CHECK(sup_difference(susyn::delta_v_general(s2.wm, s2.m, 2), s2.delta_v, xs, {}) <= 1e-12);
    }
}

TEST_CASE("third-order delta V at x = 1") {
    // m = 1 + x^2, W_m = x: m^(-1/2) [2 m + 2 m' x] = 8/sqrt(2) at x = 1.
    const MassFn m(parse("1 + x^2"), -2, 2);
    const Complex dv = evaluate(susyn::delta_v_general(parse("x"), m, 3), 1.0);
    CHECK(dv.real() == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(dv.imag() == 0.0);
    // The same value computed from the definition by hand.
    const double mass = 2.0;
    const double dmass = 2.0;
    const double by_hand = std::pow(mass, 1.5) / (mass * mass) * (2.0 * mass * 1.0 + 2.0 * dmass * 1.0);
    CHECK(dv.real() == doctest::Approx(by_hand).epsilon(1e-14));
}

TEST_CASE("delta V for unit mass is 2 W_m prime") {
    const MassFn m(constant(1.0), -1, 1);
    const auto xs = interior_samples(-1, 1, 20);
    for (int n : {1, 2, 3, 6}) CHECK(sup_abs(susyn::delta_v_general(constant(2.0), m, n), xs, {}) == 0.0);
    CHECK(sup_difference(susyn::delta_v_general(parse("i*x"), m, 4), constant(Complex(0, 2)), xs, {}) == 0.0);
}

TEST_CASE("u-coefficient defects") {
    const MassFn unit(constant(1.0), -1, 1);
    const auto xs = interior_samples(-1, 1, 30);

    auto d = susyn::delta_u_coefficients(parse("x^3"), unit, 2, std::nullopt);
    CHECK(sup_difference(d.delta_u_nm2, parse("3*x^2"), xs, {}) <= 1e-15);
    CHECK_FALSE(d.delta_u_nm3.has_value());

    d = susyn::delta_u_coefficients(parse("x^3"), unit, 4, std::nullopt);
    CHECK(sup_difference(d.delta_u_nm2, parse("9*x^2"), xs, {}) <= 1e-15);
    CHECK_FALSE(d.delta_u_nm3.has_value());

    // N = 3, m = 1, W_m = x^3, u_1 = x: -(W_m'') + u_1' = -6x + 1.
    d = susyn::delta_u_coefficients(parse("x^3"), unit, 3, parse("x"));
    REQUIRE(d.delta_u_nm3.has_value());
    CHECK(sup_difference(*d.delta_u_nm3, parse("1 - 6*x"), xs, {}) <= 1e-14);

    // Linear W_m and u_{N-2} with unit mass: no defect.
    d = susyn::delta_u_coefficients(parse("x"), unit, 5, constant(3.0));
    CHECK(sup_abs(*d.delta_u_nm3, xs, {}) == 0.0);

    CHECK_THROWS_AS(susyn::delta_u_coefficients(parse("x"), unit, 1, std::nullopt), ConfigError);
}

TEST_CASE("second-order u0 defect matches the general formula") {
    testing_models::ModelFactory factory(404);
    const auto xs = interior_samples(-1, 1, 80);
    for (int k = 0; k < 10; ++k) {
        const auto model = factory.next();
        const auto s2 = susy2::build_second_order(spec_of(model, {-1.0, 0.2}));
        const auto d = susyn::delta_u_coefficients(s2.wm, s2.m, 2, s2.u0);
        CHECK(sup_difference(s2.u0 - pt_image(s2.u0), d.delta_u_nm2, xs, {}) <= 1e-10);
    }
}

TEST_CASE("energy polynomial examples") {
    auto p = susyn::energy_roots({-3.0, 2.0});
    REQUIRE(p.roots.size() == 2);
    CHECK(std::abs(p.roots[0] - 1.0) <= 1e-14);
    CHECK(std::abs(p.roots[1] - 2.0) <= 1e-14);

    p = susyn::energy_roots({-6.0, 11.0, -6.0});
    REQUIRE(p.roots.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(p.roots[static_cast<std::size_t>(k)] - (k + 1.0)) <= 1e-12);

    p = susyn::energy_roots({0.0, 1.0});
    REQUIRE(p.roots.size() == 2);
    CHECK(std::abs(p.roots[0] - Complex(0, -1)) <= 1e-14);
    CHECK(std::abs(p.roots[1] - Complex(0, 1)) <= 1e-14);

    p = susyn::energy_roots({Complex(2.5, -1.0)});
    REQUIRE(p.roots.size() == 1);
    CHECK(p.roots[0] == Complex(-2.5, 1.0));
    CHECK(p.evaluate(p.roots[0]) == Complex(0.0));

    CHECK_THROWS_AS(susyn::energy_roots({}), ConfigError);
}

TEST_CASE("real cubics always have a real root") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        const auto p = susyn::energy_roots({u(rng), u(rng), u(rng)});
        double min_imag = 1e300;
        for (Complex r : p.roots) min_imag = std::min(min_imag, std::abs(r.imag()));
        CHECK(min_imag <= 1e-10);
    }
}

TEST_CASE("companion roots have small scaled residuals up to degree 12") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 1; n <= 12; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Complex> l;
            for (int k = 0; k < n; ++k) l.emplace_back(u(rng), u(rng));
            const auto p = susyn::energy_roots(l);
            CAPTURE(n);
            CHECK(p.roots.size() == static_cast<std::size_t>(n));
            CHECK(p.scaled_residual() <= 1e-9);
            CHECK(std::is_sorted(p.roots.begin(), p.roots.end(), [](Complex a, Complex b) {
                return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
            }));
        }
    }
}

TEST_CASE("charge coefficients by order") {
    testing_models::ModelFactory factory(505);
    const auto model = factory.next();

    auto c = susyn::charge_coefficients(spec_of(model, {1.0}));
    CHECK(c.n == 1);
    CHECK(c.u.empty());
    CHECK(c.complete());

    c = susyn::charge_coefficients(spec_of(model, {-3.0, 2.0}));
    REQUIRE(c.u.size() == 1);
    CHECK(c.complete());

    c = susyn::charge_coefficients(spec_of(model, {1.0, 2.0, 3.0}));
    CHECK(c.u.size() == 2);
    CHECK_FALSE(c.complete());

    const auto xs = interior_samples(-1, 1, 30);
    CHECK(sup_difference(c.lead, pow(model.m.expr(), -1.5), xs, {}) == 0.0);
}

TEST_CASE("binomial coefficients") {
    CHECK(susyn::binomial(5, 2) == 10.0);
    CHECK(susyn::binomial(4, 0) == 1.0);
    CHECK(susyn::binomial(1, 2) == 0.0);
    CHECK(susyn::binomial(12, 6) == 924.0);
    CHECK(susyn::binomial(3, -1) == 0.0);
}

}  // TEST_SUITE
