#pragma once

/**
 * @file aircraft.hpp
 * Linear longitudinal model of a rigid aircraft with an uncertain centre-of-gravity
 * location. State x = [u, w, q, theta], input eta (elevator/canard, rad), outputs
 * (theta, q, alpha = w / V0).
 *
 * Dimensional derivatives follow the usual stability-axis normalization:
 *   force  / u, w : 1/2 rho V0 S         moment / u, w : 1/2 rho V0 S c
 *   force  / q    : 1/2 rho V0 S c       moment / q    : 1/2 rho V0 S c^2
 *   force  / wdot : 1/2 rho S c          moment / wdot : 1/2 rho S c^2
 *   force  / eta  : 1/2 rho V0^2 S       moment / eta  : 1/2 rho V0^2 S c
 */

#include <cmath>
#include <string>
#include <tuple>

#include "rstab/errors.hpp"
#include "rstab/lti.hpp"

namespace rstab::aircraft {

inline constexpr double kStandardGravity = 9.81;

struct FlightCondition {
    double V0 = 0.0;     ///< airspeed, m/s
    double m = 0.0;      ///< mass, kg
    double Iy = 0.0;     ///< pitch inertia, kg m^2
    double rho = 0.0;    ///< air density, kg/m^3
    double S = 0.0;      ///< wing area, m^2
    double c = 0.0;      ///< mean aerodynamic chord, m
    double g = kStandardGravity;
    double gamma_e = 0.0;  ///< equilibrium flight path angle, rad
    double alpha_e = 0.0;  ///< equilibrium incidence, rad

    void validate() const {
        const auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("flight condition field ") + name + " must be positive");
        };
        positive(V0, "V0");
        positive(m, "m");
        positive(Iy, "Iy");
        positive(rho, "rho");
        positive(S, "S");
        positive(c, "c");
        positive(g, "g");
    }
};

/// One family (X, Z or M) of derivatives with respect to u, w, wdot, q and eta.
struct DerivativeSet {
    double u = 0.0;
    double w = 0.0;
    double wdot = 0.0;
    double q = 0.0;
    double eta = 0.0;

    friend bool operator==(const DerivativeSet&, const DerivativeSet&) = default;
};

struct DimensionlessDerivatives {
    DerivativeSet X, Z, M;
};

/// Derivatives in SI units (X, Z in N per state unit, M in N m per state unit).
struct DimensionalDerivatives {
    DerivativeSet X, Z, M;

    friend bool operator==(const DimensionalDerivatives&, const DimensionalDerivatives&) = default;
};

/// Open-loop model with the affine c.g.-shift perturbation A + Delta Q_A, B + Delta Q_B.
struct UncertainPlant {
    StateSpace nominal;
    Matrix QA;
    Matrix QB;
    double mu = 0.0;  ///< m / (Iy (m - Zwdot)), 1/(kg m^2)
};

/// Mass, state and input matrices of M xdot = A_t x + B_t eta.
struct LongitudinalMatrices {
    Matrix mass;
    Matrix At;
    Matrix Bt;
};

[[nodiscard]] inline DimensionalDerivatives dimensionalize(const FlightCondition& fc, const DimensionlessDerivatives& d) {
    fc.validate();
    const double q_s = 0.5 * fc.rho * fc.V0 * fc.S;
    const double sc = 0.5 * fc.rho * fc.S * fc.c;
    const double dyn = 0.5 * fc.rho * fc.V0 * fc.V0 * fc.S;
    const auto force = [&](const DerivativeSet& n) {
        return DerivativeSet{q_s * n.u, q_s * n.w, sc * n.wdot, q_s * fc.c * n.q, dyn * n.eta};
    };
    DimensionalDerivatives out;
    out.X = force(d.X);
    out.Z = force(d.Z);
    out.M = DerivativeSet{q_s * fc.c * d.M.u, q_s * fc.c * d.M.w, sc * fc.c * d.M.wdot, q_s * fc.c * fc.c * d.M.q,
                          dyn * fc.c * d.M.eta};
    return out;
}

[[nodiscard]] inline LongitudinalMatrices assemble_longitudinal(const FlightCondition& fc, const DimensionalDerivatives& dd) {
    if (!(fc.m - dd.Z.wdot > 0.0))
        throw SingularMassError("m - Zwdot must be positive for an invertible mass matrix");
    LongitudinalMatrices out;
    out.mass = Matrix::Identity(4, 4);
    out.mass(0, 0) = fc.m;
    out.mass(0, 1) = -dd.X.wdot;
    out.mass(1, 1) = fc.m - dd.Z.wdot;
    out.mass(2, 1) = -dd.M.wdot;
    out.mass(2, 2) = fc.Iy;

    out.At.resize(4, 4);
    out.At << dd.X.u, dd.X.w, dd.X.q, -fc.m * fc.g,
              dd.Z.u, dd.Z.w, dd.Z.q + fc.m * fc.V0, 0.0,
              dd.M.u, dd.M.w, dd.M.q, 0.0,
              0.0, 0.0, 1.0, 0.0;
    out.Bt.resize(4, 1);
    out.Bt << dd.X.eta, dd.Z.eta, dd.M.eta, 0.0;
    return out;
}

/// Closed-form inverse of the longitudinal mass matrix.
[[nodiscard]] inline Matrix mass_matrix_inverse(const FlightCondition& fc, const DimensionalDerivatives& dd) {
    const double mz = fc.m - dd.Z.wdot;
    if (!(mz > 0.0))
        throw SingularMassError("m - Zwdot must be positive for an invertible mass matrix");
    Matrix inv = Matrix::Zero(4, 4);
    inv(0, 0) = 1.0 / fc.m;
    inv(0, 1) = dd.X.wdot / (fc.m * mz);
    inv(1, 1) = 1.0 / mz;
    inv(2, 1) = dd.M.wdot / (fc.Iy * mz);
    inv(2, 2) = 1.0 / fc.Iy;
    inv(3, 3) = 1.0;
    return inv;
}

/// Output map for (theta, q, alpha).
[[nodiscard]] inline Matrix output_matrix(double V0) {
    Matrix c = Matrix::Zero(3, 4);
    c(0, 3) = 1.0;
    c(1, 2) = 1.0;
    c(2, 1) = 1.0 / V0;
    return c;
}

[[nodiscard]] inline StateSpace to_state_space(const LongitudinalMatrices& lm, double V0) {
    Eigen::FullPivLU<Matrix> lu(lm.mass);
    if (!lu.isInvertible())
        throw SingularMassError("mass matrix is singular");
    return {lu.solve(lm.At), lu.solve(lm.Bt), output_matrix(V0), Matrix::Zero(3, 1),
            {"u", "w", "q", "theta"}, {"eta"}, {"theta", "q", "alpha"}};
}

/// Static output feedback eta = eta_cmd - Kq q - Kalpha alpha on a (theta, q, alpha)
/// plant. The result keeps B and reports only theta.
[[nodiscard]] inline Matrix inner_loop_gain(double Kq, double Kalpha) {
    Matrix k(1, 3);
    k << 0.0, Kq, Kalpha;
    return k;
}

[[nodiscard]] inline StateSpace inner_loop_stabilize(const StateSpace& plant, double Kq, double Kalpha) {
    if (plant.outputs() != 3 || plant.inputs() != 1)
        throw DimensionError("inner loop expects a single-input plant with outputs (theta, q, alpha)");
    const Matrix k = inner_loop_gain(Kq, Kalpha);
    return {plant.A() - plant.B() * k * plant.C(), plant.B(), plant.C().topRows(1), Matrix::Zero(1, 1),
            plant.state_names(), plant.input_names(), {"theta"}};
}

/// Pitching-moment derivatives about a c.g. moved aft by delta metres.
[[nodiscard]] inline DimensionalDerivatives uncertain_derivatives(const DimensionalDerivatives& dd, double delta) {
    DimensionalDerivatives out = dd;
    out.M.u -= dd.Z.u * delta;
    out.M.w -= dd.Z.w * delta;
    out.M.wdot -= dd.Z.wdot * delta;
    out.M.q -= dd.Z.q * delta;
    out.M.eta -= dd.Z.eta * delta;
    return out;
}

struct PerturbationMatrices {
    Matrix QA;
    Matrix QB;
    double mu = 0.0;
};

[[nodiscard]] inline PerturbationMatrices perturbation_matrices(const FlightCondition& fc, const DimensionalDerivatives& dd) {
    const double mz = fc.m - dd.Z.wdot;
    if (!(mz > 0.0))
        throw SingularMassError("m - Zwdot must be positive for an invertible mass matrix");
    PerturbationMatrices out;
    out.mu = fc.m / (fc.Iy * mz);
    out.QA = Matrix::Zero(4, 4);
    out.QA(2, 0) = -out.mu * dd.Z.u;
    out.QA(2, 1) = -out.mu * dd.Z.w;
    out.QA(2, 2) = -out.mu * (dd.Z.q + dd.Z.wdot * fc.V0);
    out.QB = Matrix::Zero(4, 1);
    out.QB(2, 0) = -out.mu * dd.Z.eta;
    return out;
}

/// Open-loop state space rebuilt from scratch at a given c.g. shift.
[[nodiscard]] inline StateSpace rebuild_at(const FlightCondition& fc, const DimensionalDerivatives& dd, double delta) {
    return to_state_space(assemble_longitudinal(fc, uncertain_derivatives(dd, delta)), fc.V0);
}

[[nodiscard]] inline UncertainPlant build_uncertain_plant(const FlightCondition& fc, const DimensionlessDerivatives& d) {
    const DimensionalDerivatives dd = dimensionalize(fc, d);
    StateSpace nominal = to_state_space(assemble_longitudinal(fc, dd), fc.V0);
    PerturbationMatrices pm = perturbation_matrices(fc, dd);
    return {std::move(nominal), std::move(pm.QA), std::move(pm.QB), pm.mu};
}

/// Closes the pitch-rate / incidence loop on an uncertain plant. The c.g. shift acts on
/// the bare airframe, so the loop maps it as QA' = QA - QB K C and QB' = QB.
[[nodiscard]] inline UncertainPlant augment_uncertain(const UncertainPlant& plant, double Kq, double Kalpha) {
    const Matrix k = inner_loop_gain(Kq, Kalpha);
    return {inner_loop_stabilize(plant.nominal, Kq, Kalpha), plant.QA - plant.QB * k * plant.nominal.C(), plant.QB,
            plant.mu};
}

// ---------------------------------------------------------------------------
// Reference data: canard-configured fly-by-wire combat aircraft at sea level, 100 m/s.

[[nodiscard]] inline FlightCondition reference_flight_condition() {
    FlightCondition fc;
    fc.V0 = 100.0;
    fc.m = 12500.0;
    fc.Iy = 105592.0;
    fc.rho = 1.225;
    fc.S = 50.0;
    fc.c = 5.7;
    fc.g = kStandardGravity;
    return fc;
}

[[nodiscard]] inline DimensionlessDerivatives reference_derivatives() {
    DimensionlessDerivatives d;
    d.X = {0.050, 0.260, 0.0, 0.0, 0.0};
    d.Z = {-1.200, -2.800, -0.700, -1.200, -0.040};
    d.M = {0.003, 0.280, 0.380, -0.500, 0.160};
    return d;
}

inline constexpr double kReferenceKq = 1.6;
inline constexpr double kReferenceKalpha = 1.72;

}  // namespace rstab::aircraft
