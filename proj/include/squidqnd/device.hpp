#pragma once

#include <span>
#include <string_view>

namespace squidqnd {

/// Physical device parameters, all SI.
struct DeviceParams {
    double m = 0.0;         // kg, effective mass of the flexural mode
    double omega_m = 0.0;   // rad/s
    double gamma_m = 0.0;   // rad/s
    double L = 0.0;         // H, LC resonator inductance
    double C = 0.0;         // F
    double gamma_e = 0.0;   // rad/s
    double Lambda = 0.0;    // H, loop self-inductance
    double C_J = 0.0;       // F
    double I_c = 0.0;       // A
    double M = 0.0;         // H, loop/LC mutual inductance
    double B = 0.0;         // T, field at the beam
    double l = 0.0;         // m, effective beam length
    double Phi_e = 0.0;     // Wb
    double T = 0.0;         // K
    double I_in_amp = 0.0;  // A
    double omega_d = 0.0;   // rad/s

    double omega_e() const;
    /// Coupling coefficient M / sqrt(Lambda L).
    double K() const;

    /// Throws Error(InvalidArgument) naming the first violated invariant.
    void validate() const;
};

/// Physical dimension of a parameter; drives unit parsing and display.
enum class Dimension {
    Mass,
    AngularRate,
    Inductance,
    Capacitance,
    Current,
    MagneticField,
    Length,
    Flux,
    Temperature,
    Time,
    Dimensionless,
};

struct FieldInfo {
    std::string_view name;
    double DeviceParams::*member;
    Dimension dimension;
};

/// All DeviceParams fields in declaration order.
std::span<const FieldInfo> device_fields();
const FieldInfo* find_device_field(std::string_view name);

/// SI unit symbol printed for a dimension ("rad/s", "H", ...).
std::string_view si_unit(Dimension d);

struct DimensionlessCircuit {
    double beta_L = 0.0;
    double beta_C = 0.0;
    double K = 0.0;
    double E0 = 0.0;            // J
    double phi_e_offset = 0.0;  // (2 pi / Phi0)(Phi_e - Phi0/2)
    bool double_well = false;   // beta_L (1 - K^2) > 1
};

DimensionlessCircuit derive_dimensionless(const DeviceParams& p);

/// Dimensionless flux offset phi_0 for beam displacement x (m) and LC flux
/// varphi (Wb).
double phi0_of(const DeviceParams& p, double x, double varphi);

/// E0 = Phi0^2 / (8 pi^2 Lambda).
double energy_scale(double Lambda);

/// Fastest small-oscillation angular frequency of the loop flux,
/// sqrt((1/(Lambda(1-K^2)) + 2 pi I_c/Phi0) / C_J).
double loop_plasma_omega(const DeviceParams& p);

}  // namespace squidqnd
