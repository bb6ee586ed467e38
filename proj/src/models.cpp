#include "qthermo/models.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo::models {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

constexpr std::array<std::size_t, 3> kTwoQubitsAndMode{2, 2, 2};
constexpr std::array<std::size_t, 2> kTwoQubits{2, 2};
constexpr std::array<std::size_t, 2> kQubitAndMode{2, 2};

ComplexMatrix hc(const ComplexMatrix& m) { return m + m.adjoint(); }

} // namespace

ComplexMatrix sigma_plus() {
    ComplexMatrix m(2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_minus() { return sigma_plus().adjoint(); }

ComplexMatrix number_operator() {
    ComplexMatrix m(2);
    m(1, 1) = 1.0;
    return m;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::span<const std::size_t> dims) {
    require(site < dims.size(), "embed: site out of range");
    require(op.dim() == dims[site], "embed: operator does not match subsystem dimension");
    std::vector<ComplexMatrix> factors;
    factors.reserve(dims.size());
    for (std::size_t s = 0; s < dims.size(); ++s)
        factors.push_back(s == site ? op : ComplexMatrix::identity(dims[s]));
    return tensor(factors);
}

// ---------------------------------------------------------------- example 1

void Example1Params::validate() const {
    require(lambda > 0.0 && std::isfinite(lambda), "example1: lambda must be > 0");
    require(R >= 0.0 && std::isfinite(R), "example1: R must be >= 0");
    require(std::isfinite(omega0), "example1: omega0 must be finite");
    require(beta > 0.0 && std::isfinite(beta), "example1: beta must be > 0");
    require(std::hypot(alpha1, alpha2) > 0.0, "example1: alpha1 and alpha2 cannot both vanish");
    require(std::abs(std::norm(c01) + std::norm(c02) - 1.0) <= 1e-12, "example1: |c01|^2 + |c02|^2 must equal 1");
    require(t_max > 0.0 && steps >= 2, "example1: need t_max > 0 and steps >= 2");
}

cplx lorentzian_envelope(double t, double lambda, double omega) {
    const cplx d = std::sqrt(cplx(lambda * lambda - 4.0 * omega * omega));
    const cplx x = 0.5 * d * t;
    const double damp = -0.5 * lambda * t;
    const cplx grow = std::exp(x + damp);
    const cplx shrink = std::exp(-x + damp);
    const cplx cosh_part = 0.5 * (grow + shrink);
    // e^{-lambda t/2} sinh(x)/x
    const cplx sinhc_part = std::abs(x) < 1e-4 ? std::exp(damp) * (1.0 + x * x / 6.0) : (grow - shrink) / (2.0 * x);
    return cosh_part + 0.5 * lambda * t * sinhc_part;
}

cplx example1_amplitude(double t, const Example1Params& p) {
    const double alpha_t = std::hypot(p.alpha1, p.alpha2);
    const double b1 = p.alpha1 / alpha_t;
    const double b2 = p.alpha2 / alpha_t;
    const cplx super0 = b1 * p.c01 + b2 * p.c02;
    const cplx sub0 = b2 * p.c01 - b1 * p.c02;
    return b1 * super0 * lorentzian_envelope(t, p.lambda, p.omega()) + b2 * sub0;
}

HermitianOperator example1_battery_hamiltonian(const Example1Params& p) {
    const std::array<double, 2> e{0.0, p.omega0};
    return HermitianOperator::diagonal(e);
}

double pseudomode_calibration_error(const Example1Params& p, const dynamics::IntegratorOptions& opts) {
    p.validate();
    const auto& dims = kQubitAndMode;
    const ComplexMatrix a = embed(sigma_minus(), 1, dims);
    const ComplexMatrix sp = embed(sigma_plus(), 0, dims);
    ComplexMatrix h = (embed(number_operator(), 0, dims) + embed(number_operator(), 1, dims)) * cplx(p.omega0);
    h += hc(sp * a) * cplx(p.omega());

    dynamics::LindbladSpec spec{HermitianOperator(h), {{a, 2.0 * p.lambda}}, {}};
    const DensityMatrix rho0 = DensityMatrix::basis_state(4, 2); // |1>|0>
    double err = 0.0;
    dynamics::lindblad_integrate(
        spec, rho0, p.grid(),
        [&](std::size_t, double t, const ComplexMatrix& rho) {
            const double excited = (rho(2, 2) + rho(3, 3)).real();
            const double exact = std::norm(lorentzian_envelope(t, p.lambda, p.omega()));
            err = std::max(err, std::abs(excited - exact));
        },
        opts);
    return err;
}

PseudomodeRun example1_pseudomode_oracle(const Example1Params& p, const dynamics::IntegratorOptions& opts) {
    p.validate();
    PseudomodeRun run;
    run.calibration_error = pseudomode_calibration_error(p, opts);
    if (run.calibration_error > pseudomode_calibration_tolerance) {
        std::ostringstream os;
        os << "pseudomode calibration failed: single-qubit error " << run.calibration_error << " > "
           << pseudomode_calibration_tolerance << " (refine the grid)";
        throw NumericError(os.str());
    }

    const auto& dims = kTwoQubitsAndMode;
    const double alpha_t = std::hypot(p.alpha1, p.alpha2);
    const ComplexMatrix a = embed(sigma_minus(), 2, dims);
    ComplexMatrix h(8);
    for (std::size_t s = 0; s < 3; ++s) h += embed(number_operator(), s, dims) * cplx(p.omega0);
    const ComplexMatrix coupling =
        (embed(sigma_plus(), 0, dims) * cplx(p.alpha1 / alpha_t) + embed(sigma_plus(), 1, dims) * cplx(p.alpha2 / alpha_t)) *
        a;
    h += hc(coupling) * cplx(p.omega());

    dynamics::LindbladSpec spec{HermitianOperator(h), {{a, 2.0 * p.lambda}}, {}};
    std::vector<cplx> psi0(8);
    psi0[4] = p.c01; // |1,0,0>
    psi0[2] = p.c02; // |0,1,0>
    const DensityMatrix rho0 = PureState(psi0).projector();

    const std::array<std::size_t, 1> keep{0};
    run.battery.times.reserve(p.steps + 1);
    run.battery.states.reserve(p.steps + 1);
    dynamics::lindblad_integrate(
        spec, rho0, p.grid(),
        [&](std::size_t, double t, const ComplexMatrix& rho) {
            run.battery.times.push_back(t);
            run.battery.states.push_back(DensityMatrix::trusted(partial_trace(rho, dims, keep)));
        },
        opts);
    return run;
}

measures::Trajectory example1_trajectory(const Example1Params& p) {
    p.validate();
    const dynamics::GridSpec grid = p.grid();
    measures::Trajectory tr;
    tr.beta = p.beta;
    tr.hamiltonians.push_back(example1_battery_hamiltonian(p));
    tr.times.reserve(grid.points());
    tr.states.reserve(grid.points());
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double t = grid.time(k);
        const double excited = std::clamp(std::norm(example1_amplitude(t, p)), 0.0, 1.0);
        const std::array<double, 2> pops{1.0 - excited, excited};
        tr.times.push_back(t);
        tr.states.push_back(DensityMatrix::trusted(ComplexMatrix::diagonal(pops)));
    }
    return tr;
}

RunResult run_example1(const Example1Params& p) {
    measures::Trajectory tr = example1_trajectory(p);
    measures::MeasureSeries series = measures::compute(tr);
    return {std::move(tr), std::move(series)};
}

// ---------------------------------------------------------------- example 2

void Example2Params::validate() const {
    require(case_id == 1 || case_id == 2, "example2: case must be 1 or 2");
    require(g > 0.0 && std::isfinite(g), "example2: g must be > 0");
    require(std::isfinite(omega0) && std::isfinite(omegap), "example2: frequencies must be finite");
    require(gamma >= 0.0 && std::isfinite(gamma), "example2: gamma must be >= 0");
    require(beta > 0.0 && std::isfinite(beta), "example2: beta must be > 0");
    require(t_max > 0.0 && steps >= 2, "example2: need t_max > 0 and steps >= 2");
    if (case_id == 2)
        require(detuning() != 0.0, "example2: zero detuning omega0 - omegap makes g12 = g^2/Delta diverge");
    if (initial) {
        const std::size_t want = case_id == 1 ? 8 : 4;
        require(initial->size() == want, "example2: initial state must have " + std::to_string(want) + " amplitudes");
    }
}

Example2Setup example2_build(const Example2Params& p) {
    p.validate();
    const std::array<double, 4> battery_levels{0.0, p.omega0, p.omega0, 2.0 * p.omega0};
    HermitianOperator battery = HermitianOperator::diagonal(battery_levels);

    if (p.case_id == 1) {
        const auto& dims = kTwoQubitsAndMode;
        const ComplexMatrix a = embed(sigma_minus(), 2, dims);
        ComplexMatrix h = (embed(number_operator(), 0, dims) + embed(number_operator(), 1, dims)) * cplx(p.omega0);
        h += embed(number_operator(), 2, dims) * cplx(p.omegap);
        h += hc((embed(sigma_plus(), 0, dims) + embed(sigma_plus(), 1, dims)) * a) * cplx(p.g);
        PureState psi0 = p.initial ? PureState(*p.initial) : PureState::basis_state(8, 1); // |0,0,1>
        return {UnitarySetup{HermitianOperator(h), std::move(psi0)}, std::move(battery)};
    }

    const auto& dims = kTwoQubits;
    const ComplexMatrix s1m = embed(sigma_minus(), 0, dims);
    const ComplexMatrix s2m = embed(sigma_minus(), 1, dims);
    ComplexMatrix h = battery.matrix();
    h += hc(s1m.adjoint() * s2m) * cplx(p.exchange_coupling());
    dynamics::LindbladSpec spec{HermitianOperator(h), {{s1m, p.gamma}, {s2m, p.gamma}}, {}};
    DensityMatrix rho0 = p.initial ? PureState(*p.initial).projector() : DensityMatrix::basis_state(4, 2); // |1,0>
    return {DissipativeSetup{std::move(spec), std::move(rho0)}, std::move(battery)};
}

RunResult run_example2(const Example2Params& p) {
    Example2Setup setup = example2_build(p);
    const dynamics::GridSpec grid = p.grid();
    dynamics::Evolution ev;

    if (auto* u = std::get_if<UnitarySetup>(&setup.dynamics)) {
        const auto states = dynamics::schrodinger_states(u->hamiltonian, u->psi0, grid);
        const std::array<std::size_t, 2> keep{0, 1};
        ev.times.reserve(states.size());
        ev.states.reserve(states.size());
        for (std::size_t k = 0; k < states.size(); ++k) {
            ev.times.push_back(grid.time(k));
            const ComplexMatrix full = ComplexMatrix::outer(states[k].amplitudes(), states[k].amplitudes());
            ev.states.push_back(DensityMatrix::trusted(partial_trace(full, u->dims, keep)));
        }
    } else {
        const auto& d = std::get<DissipativeSetup>(setup.dynamics);
        ev = dynamics::lindblad_evolve(d.spec, d.rho0, grid);
    }

    measures::Trajectory tr = dynamics::to_trajectory(std::move(ev), setup.battery_hamiltonian, p.beta);
    measures::MeasureSeries series = measures::compute(tr);
    return {std::move(tr), std::move(series)};
}

} // namespace qthermo::models
