// models.hpp: the two quantum-battery case studies.
//
// Example 1: battery qubit charged by a charger qubit, both coupled to a
// common zero-temperature bosonic bath with a Lorentzian spectral density
// (single-excitation sector). The closed-form amplitude is cross-checked by
// an exact pseudomode embedding integrated with the Lindblad solver.
//
// Example 2: two-qubit battery charged through one photon mode, either
// unitarily (case 1) or through the effective qubit-qubit exchange with
// spontaneous emission (case 2).

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qthermo/dynamics.hpp"
#include "qthermo/measures.hpp"
#include "qthermo/states.hpp"

namespace qthermo::models {

// Basis convention: index 0 = |0> (ground), 1 = |1> (excited); the photon
// mode is truncated to Fock states {0, 1}.
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix number_operator();
// Places `op` on subsystem `site` of a register with the given dims.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::span<const std::size_t> dims);

struct Example1Params {
    double omega0 = 1.0;
    double lambda = 1.0; // Lorentzian width
    double R = 0.3;      // Omega / lambda
    double alpha1 = 1.0 / std::sqrt(2.0);
    double alpha2 = 1.0 / std::sqrt(2.0);
    double beta = 0.1;
    cplx c01 = 0.0; // battery excited
    cplx c02 = 1.0; // charger excited
    double t_max = 20.0;
    std::size_t steps = 20000;

    double omega() const noexcept { return R * lambda; }
    dynamics::GridSpec grid() const noexcept { return {t_max, steps}; }
    void validate() const;
};

// Amplitude of a single qubit coupled with strength `omega` to a resonant
// Lorentzian bath of width `lambda`:
//   e^{-lambda t/2} [cosh(D t/2) + (lambda/D) sinh(D t/2)],  D = sqrt(lambda^2 - 4 omega^2),
// continued analytically through D = 0 and imaginary D.
cplx lorentzian_envelope(double t, double lambda, double omega);

// c1(t) in the frame rotating at omega0 (the global phase drops out of |c1|^2).
cplx example1_amplitude(double t, const Example1Params& p);

HermitianOperator example1_battery_hamiltonian(const Example1Params& p);

struct PseudomodeRun {
    dynamics::Evolution battery; // reduced state of qubit 1
    double calibration_error = 0.0;
};

// sup over the grid of | |E(t)|^2 - P_excited(t) | for one qubit coupled to
// the pseudomode.
double pseudomode_calibration_error(const Example1Params& p, const dynamics::IntegratorOptions& opts = {});

inline constexpr double pseudomode_calibration_tolerance = 1e-6;

// Two qubits plus one lossy mode (decay rate 2*lambda) integrated with the
// Lindblad solver. Runs the single-qubit calibration first and throws
// NumericError if it exceeds pseudomode_calibration_tolerance.
PseudomodeRun example1_pseudomode_oracle(const Example1Params& p, const dynamics::IntegratorOptions& opts = {});

struct RunResult {
    measures::Trajectory trajectory;
    measures::MeasureSeries series;
};

measures::Trajectory example1_trajectory(const Example1Params& p);
RunResult run_example1(const Example1Params& p);

struct Example2Params {
    int case_id = 1;
    double g = 1.0;
    double omega0 = 1.0;
    double omegap = 2.0;
    double gamma = 0.1;
    double beta = 0.1;
    double t_max = 100.0;
    std::size_t steps = 100000;
    // Overrides the default initial state (|00>|1> for case 1, |10> for case 2).
    std::optional<std::vector<cplx>> initial;

    double detuning() const noexcept { return omega0 - omegap; }
    double exchange_coupling() const noexcept { return g * g / detuning(); }
    dynamics::GridSpec grid() const noexcept { return {t_max, steps}; }
    void validate() const;
};

struct UnitarySetup {
    HermitianOperator hamiltonian; // qubit 1 (x) qubit 2 (x) photon
    PureState psi0;
    std::array<std::size_t, 3> dims{2, 2, 2};
};

struct DissipativeSetup {
    dynamics::LindbladSpec spec; // two qubits
    DensityMatrix rho0;
};

struct Example2Setup {
    std::variant<UnitarySetup, DissipativeSetup> dynamics;
    HermitianOperator battery_hamiltonian; // omega0 (n1 + n2)
};

Example2Setup example2_build(const Example2Params& p);
RunResult run_example2(const Example2Params& p);

} // namespace qthermo::models
