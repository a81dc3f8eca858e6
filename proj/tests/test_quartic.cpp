#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles/taylor.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/quartic.hpp"
#include "squidqnd/rwa.hpp"
#include "support.hpp"

using namespace squidqnd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> samples_for(const TwoLevelModel& tl, std::size_t n = 21) {
    return symmetric_samples(0.5 * tl.delta / tl.eta, n);
}

}  // namespace

TEST_CASE("quartic fit of the analytic surface matches its Taylor series", "[quartic]") {
    const auto tl = testing::model_with(4.8, 1.2e-3, 1.0);
    const auto x = samples_for(tl);
    const auto y = analytic_surface(tl, x);
    const auto fit = fit_quartic(x, y);
    CHECK_THAT(fit.c2, WithinRel(oracle::lower_branch_c2(4.8, 1.2e-3), 0.01));
    CHECK_THAT(fit.c2, WithinRel(-9600.0, 0.01));
    CHECK_THAT(fit.c4, WithinRel(oracle::lower_branch_c4(4.8, 1.2e-3), 0.01));
    CHECK_THAT(fit.c0, WithinRel(-1.2e-3, 1e-6));
    CHECK(fit.residual < 1e-6 * 1.2e-3);
    CHECK(fit.domain_max == Catch::Approx(0.5 * 1.2e-3 / 4.8));
    CHECK(fit.domain_min == Catch::Approx(-fit.domain_max));

    SECTION("scaling of eta and Delta") {
        for (double s : {0.5, 2.0, 3.0}) {
            const auto tl2 = testing::model_with(4.8 * s, 1.2e-3, 1.0);
            const auto x2 = samples_for(tl2);
            const auto f2 = fit_quartic(x2, analytic_surface(tl2, x2));
            CHECK_THAT(f2.c2, WithinRel(fit.c2 * s * s, 1e-6));
            CHECK_THAT(f2.c4, WithinRel(fit.c4 * std::pow(s, 4), 1e-6));
        }
    }
}

TEST_CASE("quartic fit of exact polynomials", "[quartic]") {
    const auto x = symmetric_samples(0.3, 15);
    std::vector<double> parabola, quartic;
    for (double p : x) {
        parabola.push_back(2.0 - 5.0 * p * p);
        quartic.push_back(1.0 + 3.0 * p * p + 40.0 * std::pow(p, 4));
    }
    const auto f1 = fit_quartic(x, parabola);
    CHECK_THAT(f1.c0, WithinRel(2.0, 1e-12));
    CHECK_THAT(f1.c2, WithinRel(-5.0, 1e-10));
    CHECK_THAT(f1.c4, WithinAbs(0.0, 1e-8));
    const auto f2 = fit_quartic(x, quartic);
    CHECK_THAT(f2.c2, WithinRel(3.0, 1e-10));
    CHECK_THAT(f2.c4, WithinRel(40.0, 1e-9));
    CHECK(f2.even_coefficients.size() >= 3);

    SECTION("bad inputs") {
        const auto few = symmetric_samples(0.3, 5);
        CHECK_THROWS_AS(fit_quartic(few, std::vector<double>(5, 1.0)), Error);
        std::vector<double> shifted = x;
        for (double& p : shifted) p += 0.01;
        CHECK_THROWS_AS(fit_quartic(shifted, parabola), Error);
        CHECK_THROWS_AS(fit_quartic(x, std::vector<double>(x.size(), 1.0)), Error);
    }
}

TEST_CASE("coefficients from the quartic surface", "[quartic]") {
    const auto p = testing::example_device();
    const double E0 = energy_scale(p.Lambda);
    const auto tl = testing::model_with(4.8, 1.2e-3, E0);
    const auto x = samples_for(tl);
    const auto fit = fit_quartic(x, analytic_surface(tl, x));
    const auto rwa = rwa_coefficients_from_quartic(fit, p);
    const auto closed = compute_couplings(p, tl);

    CHECK_THAT(rwa.Omega_04.si(), WithinRel(closed.Omega_04.si(), 0.01));
    CHECK_THAT(rwa.Omega_22.si(), WithinRel(closed.Omega_22.si(), 0.01));
    const double lm = zero_point_phase_m(p), le = zero_point_phase_e(p);
    CHECK_THAT(rwa.Omega_22.si() / rwa.Omega_04.si(), WithinRel(4.0 * lm * lm / (le * le), 1e-12));
    CHECK_THAT(rwa.Omega_40.si() / rwa.Omega_04.si(), WithinRel(std::pow(lm / le, 4), 1e-12));

    SECTION("no quartic term, no Kerr or cross coupling") {
        QuarticFit flat = fit;
        flat.c4 = 0.0;
        const auto z = rwa_coefficients_from_quartic(flat, p);
        CHECK(z.Omega_04.si() == 0.0);
        CHECK(z.Omega_22.si() == 0.0);
        CHECK(z.Omega_40.si() == 0.0);
    }
}

TEST_CASE("exact surface of the full loop problem", "[quartic]") {
    const auto dc = derive_dimensionless(testing::example_device());
    const PotentialSpec spec{dc.beta_L, dc.beta_C, dc.K, 0.0};
    const auto tl = extract_two_level(spec, dc.E0);
    const auto x = samples_for(tl);
    const auto exact = exact_surface(spec, tl.grid, tl, x);
    const auto analytic = analytic_surface(tl, x);

    REQUIRE(exact.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK_THAT(exact[i], WithinAbs(exact[x.size() - 1 - i], 1e-9 * tl.delta));
        CHECK_THAT(exact[i], WithinRel(analytic[i], 0.01));
    }
    const auto fe = fit_quartic(x, exact);
    const auto fa = fit_quartic(x, analytic);
    CHECK_THAT(fe.c2, WithinRel(fa.c2, 0.05));
    CHECK_THAT(fe.c4, WithinRel(fa.c4, 0.05));

    std::vector<double> outside{-2.0 * tl.window_max, 0.0, 2.0 * tl.window_max};
    CHECK_THROWS_AS(analytic_surface(tl, outside), Error);
}
