#pragma once

// Thin tagged wrappers so that derived detectability quantities cannot be
// mixed up (a rate passed where a time is expected fails to compile).

namespace squidqnd {

template <class Tag>
struct Quantity {
    double value = 0.0;

    constexpr Quantity() = default;
    constexpr explicit Quantity(double v) : value(v) {}

    constexpr double si() const { return value; }
    constexpr auto operator<=>(const Quantity&) const = default;
};

struct TimeTag {};
struct AngularRateTag {};
struct EnergyTag {};

using Seconds = Quantity<TimeTag>;
using RadPerSecond = Quantity<AngularRateTag>;
using Joules = Quantity<EnergyTag>;

}  // namespace squidqnd
