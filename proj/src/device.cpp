#include "squidqnd/device.hpp"

#include <array>
#include <cmath>
#include <string>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace c = constants;

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Config: return "ConfigError";
        case ErrorKind::BoundaryLeak: return "BoundaryLeak";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::FailedToConverge: return "FailedToConverge";
        case ErrorKind::WindowCollapse: return "WindowCollapse";
        case ErrorKind::DivergentCritical: return "DivergentCritical";
        case ErrorKind::IllConditionedFit: return "IllConditionedFit";
        case ErrorKind::TruncationFailure: return "TruncationFailure";
        case ErrorKind::SingularLiouvillian: return "SingularLiouvillian";
        case ErrorKind::Instability: return "Instability";
    }
    return "Unknown";
}

double DeviceParams::omega_e() const { return 1.0 / std::sqrt(L * C); }

double DeviceParams::K() const { return M / std::sqrt(Lambda * L); }

void DeviceParams::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorKind::InvalidArgument, "device-model", what);
    };
    const std::array<std::pair<const char*, double>, 8> positive{{
        {"m", m}, {"omega_m", omega_m}, {"gamma_m", gamma_m}, {"L", L},
        {"C", C}, {"Lambda", Lambda}, {"C_J", C_J}, {"I_c", I_c}}};
    for (const auto& [name, v] : positive)
        require(std::isfinite(v) && v > 0.0, std::string(name) + " must be strictly positive");
    const std::array<std::pair<const char*, double>, 3> non_negative{{
        {"gamma_e", gamma_e}, {"T", T}, {"I_in_amp", I_in_amp}}};
    for (const auto& [name, v] : non_negative)
        require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be non-negative");
    require(std::isfinite(M) && std::isfinite(B) && std::isfinite(l) && std::isfinite(Phi_e) &&
                std::isfinite(omega_d),
            "parameters must be finite");
    const double k = K();
    require(k >= 0.0, "K = M/sqrt(Lambda L) must be non-negative");
    require(k < 1.0, "K = M/sqrt(Lambda L) must be < 1 (overcoupled mutual inductance)");
}

namespace {

constexpr std::array<FieldInfo, 16> kFields{{
    {"m", &DeviceParams::m, Dimension::Mass},
    {"omega_m", &DeviceParams::omega_m, Dimension::AngularRate},
    {"gamma_m", &DeviceParams::gamma_m, Dimension::AngularRate},
    {"L", &DeviceParams::L, Dimension::Inductance},
    {"C", &DeviceParams::C, Dimension::Capacitance},
    {"gamma_e", &DeviceParams::gamma_e, Dimension::AngularRate},
    {"Lambda", &DeviceParams::Lambda, Dimension::Inductance},
    {"C_J", &DeviceParams::C_J, Dimension::Capacitance},
    {"I_c", &DeviceParams::I_c, Dimension::Current},
    {"M", &DeviceParams::M, Dimension::Inductance},
    {"B", &DeviceParams::B, Dimension::MagneticField},
    {"l", &DeviceParams::l, Dimension::Length},
    {"Phi_e", &DeviceParams::Phi_e, Dimension::Flux},
    {"T", &DeviceParams::T, Dimension::Temperature},
    {"I_in_amp", &DeviceParams::I_in_amp, Dimension::Current},
    {"omega_d", &DeviceParams::omega_d, Dimension::AngularRate},
}};

}  // namespace

std::span<const FieldInfo> device_fields() { return kFields; }

const FieldInfo* find_device_field(std::string_view name) {
    for (const auto& f : kFields)
        if (f.name == name) return &f;
    return nullptr;
}

std::string_view si_unit(Dimension d) {
    switch (d) {
        case Dimension::Mass: return "kg";
        case Dimension::AngularRate: return "rad/s";
        case Dimension::Inductance: return "H";
        case Dimension::Capacitance: return "F";
        case Dimension::Current: return "A";
        case Dimension::MagneticField: return "T";
        case Dimension::Length: return "m";
        case Dimension::Flux: return "Wb";
        case Dimension::Temperature: return "K";
        case Dimension::Time: return "s";
        case Dimension::Dimensionless: return "";
    }
    return "";
}

double energy_scale(double Lambda) {
    return c::flux_quantum * c::flux_quantum / (8.0 * c::pi * c::pi * Lambda);
}

DimensionlessCircuit derive_dimensionless(const DeviceParams& p) {
    p.validate();
    DimensionlessCircuit d;
    d.E0 = energy_scale(p.Lambda);
    d.beta_L = c::two_pi * p.Lambda * p.I_c / c::flux_quantum;
    d.beta_C = 2.0 * c::e * c::e / (p.C_J * d.E0);
    d.K = p.K();
    d.phi_e_offset = c::two_pi / c::flux_quantum * (p.Phi_e - 0.5 * c::flux_quantum);
    d.double_well = d.beta_L * (1.0 - d.K * d.K) > 1.0;
    return d;
}

double phi0_of(const DeviceParams& p, double x, double varphi) {
    return c::two_pi / c::flux_quantum *
           (p.Phi_e - 0.5 * c::flux_quantum + p.B * p.l * x + p.M * varphi / p.L);
}

double loop_plasma_omega(const DeviceParams& p) {
    const double k = p.K();
    const double stiffness = 1.0 / (p.Lambda * (1.0 - k * k)) + c::two_pi * p.I_c / c::flux_quantum;
    return std::sqrt(stiffness / p.C_J);
}

}  // namespace squidqnd
