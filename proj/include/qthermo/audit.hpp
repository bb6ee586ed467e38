// audit.hpp: randomized property audit of the thermodynamic identities.
//
// Every case draws a Hamiltonian, a state and a channel from a per-case seed,
// so a failing case can be replayed from the seed alone.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qthermo/random.hpp"
#include "qthermo/states.hpp"

namespace qthermo::audit {

struct Tolerances {
    double contractivity = 1e-10; // delta_S_ir >= -tol
    double free_energy_identity = 1e-10;
    double work_split = 1e-9;
};

struct Options {
    std::uint64_t seed = 42;
    std::size_t count = 1000;
    std::size_t min_dim = 2;
    std::size_t max_dim = 4;
    // The log of a numerically diagonalised Gibbs state loses relative
    // accuracy as eps / min population, so beta * spread is kept moderate.
    double beta_min = 0.1;
    double beta_max = 2.0;
    double hamiltonian_scale = 0.5;
    // Draw channels that do NOT fix the Gibbs state and search for negative
    // delta_S_ir instead of asserting its sign.
    bool expect_violation = false;
    Tolerances tol;
};

struct CaseResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    double beta = 0.0;
    double delta_S_ir = 0.0;
    double free_energy_residual = 0.0; // max over both endpoints of |W_f - S(rho||pi)/beta|
    double work_split_residual = 0.0;
    bool passed = true;
};

struct Report {
    std::vector<CaseResult> cases;
    std::vector<std::uint64_t> failing_seeds;
    std::size_t negative_entropy_cases = 0; // cases with delta_S_ir < -tol
    bool expect_violation = false;

    // Normal mode: no failures. Violation mode: identities hold and at least
    // one negative delta_S_ir case was exhibited.
    bool ok() const noexcept;
};

// Seed of case `index` derived from the run seed (splitmix64).
std::uint64_t case_seed(std::uint64_t run_seed, std::size_t index);

// Energy-basis phase rotation, a detailed-balance exchange between a random
// pair of levels, then partial thermalization. Fixes exp(-beta H)/Z.
QuantumChannel gibbs_preserving_channel(random::Engine& rng, const HermitianOperator& h, double beta);

// Decay of every excited level into the ground level with probability p.
QuantumChannel ground_state_damping(const HermitianOperator& h, double p);

CaseResult run_case(std::size_t index, std::uint64_t seed, const Options& opts);
Report run(const Options& opts);

void write_csv(std::ostream& os, const Report& r);
std::string summary(const Report& r);

} // namespace qthermo::audit
