#include <catch_amalgamated.hpp>

#include <cmath>

#include "squidqnd/constants.hpp"
#include "squidqnd/device.hpp"
#include "squidqnd/errors.hpp"
#include "support.hpp"

using namespace squidqnd;
using Catch::Matchers::WithinRel;

TEST_CASE("dimensionless circuit of the example device", "[device]") {
    const auto p = testing::example_device();
    const auto dc = derive_dimensionless(p);
    CHECK(dc.beta_L > 3.85);
    CHECK(dc.beta_L < 4.05);
    CHECK_THAT(dc.beta_C, WithinRel(1.0, 0.1));
    CHECK(dc.double_well);
    CHECK_THAT(dc.K, WithinRel(0.001, 1e-12));
    CHECK(dc.phi_e_offset == 0.0);
}

TEST_CASE("defining formulas reproduce to 1e-12", "[device]") {
    const auto p = testing::example_device();
    const auto dc = derive_dimensionless(p);
    const double phi0 = constants::h / (2.0 * constants::e);
    const double pi = constants::pi;
    const double E0 = phi0 * phi0 / (8.0 * pi * pi * p.Lambda);
    CHECK_THAT(dc.E0, WithinRel(E0, 1e-12));
    CHECK_THAT(dc.beta_L, WithinRel(2.0 * pi * p.Lambda * p.I_c / phi0, 1e-12));
    CHECK_THAT(dc.beta_C, WithinRel(2.0 * constants::e * constants::e / (p.C_J * E0), 1e-12));
    CHECK_THAT(dc.beta_C * dc.E0, WithinRel(2.0 * constants::e * constants::e / p.C_J, 1e-12));
}

TEST_CASE("scaling properties", "[device]") {
    auto p = testing::example_device();
    const auto base = derive_dimensionless(p);

    SECTION("doubling Lambda halves E0 and doubles beta_L") {
        auto q = p;
        q.Lambda *= 2.0;
        q.M = p.M * std::sqrt(2.0);  // keep K fixed
        const auto dc = derive_dimensionless(q);
        CHECK_THAT(dc.E0, WithinRel(base.E0 / 2.0, 1e-14));
        CHECK_THAT(dc.beta_L, WithinRel(2.0 * base.beta_L, 1e-14));
        CHECK_THAT(dc.beta_C * dc.E0, WithinRel(base.beta_C * base.E0, 1e-12));
    }
    SECTION("I_c scales beta_L linearly") {
        auto q = p;
        q.I_c *= 3.0;
        CHECK_THAT(derive_dimensionless(q).beta_L, WithinRel(3.0 * base.beta_L, 1e-14));
    }
    SECTION("M = 0 gives K = 0") {
        auto q = p;
        q.M = 0.0;
        CHECK(derive_dimensionless(q).K == 0.0);
    }
    SECTION("double-well flag follows beta_L (1 - K^2) > 1") {
        auto q = p;
        q.I_c = p.I_c / base.beta_L * 0.9;
        const auto dc = derive_dimensionless(q);
        CHECK_FALSE(dc.double_well);
        CHECK(dc.double_well == (dc.beta_L * (1.0 - dc.K * dc.K) > 1.0));
    }
    SECTION("deterministic") {
        const auto again = derive_dimensionless(p);
        CHECK(again.beta_L == base.beta_L);
        CHECK(again.E0 == base.E0);
    }
}

TEST_CASE("device validation", "[device]") {
    auto p = testing::example_device();
    REQUIRE_NOTHROW(p.validate());

    SECTION("K >= 1 rejected") {
        p.M = 1.0001 * std::sqrt(p.Lambda * p.L);
        CHECK_THROWS_AS(derive_dimensionless(p), Error);
    }
    SECTION("non-positive mass rejected") {
        p.m = 0.0;
        CHECK_THROWS_AS(p.validate(), Error);
    }
    SECTION("negative temperature rejected") {
        p.T = -1.0;
        CHECK_THROWS_AS(p.validate(), Error);
    }
    SECTION("omega_e is derived from L and C") {
        const double w = p.omega_e();
        p.C *= 4.0;
        CHECK_THAT(p.omega_e(), WithinRel(w / 2.0, 1e-14));
    }
}

TEST_CASE("flux offset map", "[device]") {
    auto p = testing::example_device();
    CHECK(phi0_of(p, 0.0, 0.0) == 0.0);
    // Bl = 0.05 T um, x = 1 pm: flux 5e-20 Wb.
    const double expected = 2.0 * constants::pi * 5e-20 / constants::flux_quantum;
    CHECK_THAT(phi0_of(p, 1e-12, 0.0), WithinRel(expected, 1e-12));
    CHECK_THAT(expected, WithinRel(1.52e-4, 5e-3));

    const double x1 = 3e-12, x2 = -1.7e-12;
    const double lhs = phi0_of(p, x1 + x2, 0.0) - phi0_of(p, 0.0, 0.0);
    const double rhs = (phi0_of(p, x1, 0.0) - phi0_of(p, 0.0, 0.0)) + (phi0_of(p, x2, 0.0) - phi0_of(p, 0.0, 0.0));
    CHECK_THAT(lhs, WithinRel(rhs, 1e-12));

    const double varphi = 1e-17;
    CHECK_THAT(phi0_of(p, 0.0, varphi), WithinRel(2.0 * constants::pi * p.M * varphi / (p.L * constants::flux_quantum), 1e-12));
}

TEST_CASE("field table covers every parameter", "[device]") {
    CHECK(device_fields().size() == 16);
    REQUIRE(find_device_field("Lambda") != nullptr);
    CHECK(find_device_field("Lambda")->dimension == Dimension::Inductance);
    CHECK(find_device_field("nope") == nullptr);
    CHECK(si_unit(Dimension::AngularRate) == "rad/s");
}
