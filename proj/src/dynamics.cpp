#include "qthermo/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo::dynamics {

namespace {

// Precomputed pieces of the generator: H_eff = H - i/2 sum gamma_ij L_j^dagger L_i.
class Generator {
public:
    explicit Generator(const LindbladSpec& spec) {
        spec.validate();
        const std::size_t n = spec.hamiltonian.dim();
        const std::size_t m = spec.jumps.size();
        ComplexMatrix gamma(m == 0 ? 1 : m);
        for (std::size_t i = 0; i < m; ++i) gamma(i, i) = spec.jumps[i].rate;
        for (const auto& c : spec.cross_terms) {
            gamma(c.i, c.j) = c.rate;
            gamma(c.j, c.i) = std::conj(c.rate);
        }
        ComplexMatrix decay(n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (gamma(i, j) == cplx{}) continue;
                const ComplexMatrix& li = spec.jumps[i].op;
                const ComplexMatrix lj_dag = spec.jumps[j].op.adjoint();
                decay += (lj_dag * li) * gamma(i, j);
                terms_.push_back({li, lj_dag, gamma(i, j)});
            }
        heff_ = spec.hamiltonian.matrix() - decay * cplx(0.0, 0.5);
        heff_dag_ = heff_.adjoint();
    }

    ComplexMatrix operator()(const ComplexMatrix& rho) const {
        ComplexMatrix out = (heff_ * rho - rho * heff_dag_) * cplx(0.0, -1.0);
        for (const auto& t : terms_) out += (t.left * rho * t.right) * t.rate;
        return out;
    }

private:
    struct Term {
        ComplexMatrix left;  // L_i
        ComplexMatrix right; // L_j^dagger
        cplx rate;
    };
    ComplexMatrix heff_;
    ComplexMatrix heff_dag_;
    std::vector<Term> terms_;
};

[[noreturn]] void step_failure(const std::string& what, double t, const GridSpec& grid) {
    std::ostringstream os;
    os << what << " at t = " << t << " with dt = " << grid.dt() << "; rerun with a finer grid (more steps)";
    throw StepSizeError(os.str());
}

} // namespace

void LindbladSpec::validate() const {
    const std::size_t n = hamiltonian.dim();
    for (const auto& j : jumps) {
        if (j.op.dim() != n) throw ValidationError("LindbladSpec: jump operator dimension mismatch");
        if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) throw ValidationError("LindbladSpec: rates must be >= 0");
    }
    if (cross_terms.empty()) return;
    const std::size_t m = jumps.size();
    ComplexMatrix gamma(m);
    for (std::size_t i = 0; i < m; ++i) gamma(i, i) = jumps[i].rate;
    for (const auto& c : cross_terms) {
        if (c.i >= m || c.j >= m || c.i == c.j) throw ValidationError("LindbladSpec: invalid cross-term indices");
        gamma(c.i, c.j) = c.rate;
        gamma(c.j, c.i) = std::conj(c.rate);
    }
    const double lmin = hermitian_eig(HermitianOperator(gamma)).values.front();
    if (lmin < -1e-12) throw ValidationError("LindbladSpec: rate matrix is not positive semidefinite");
}

void GridSpec::validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("grid: t_max must be positive");
    if (steps < 2) throw ValidationError("grid: need at least 2 steps");
}

std::vector<PureState> schrodinger_states(const HermitianOperator& h, const PureState& psi0, const GridSpec& grid) {
    grid.validate();
    if (h.dim() != psi0.dim()) throw ValidationError("schrodinger_evolve: dimension mismatch");
    const EigenSystem es = hermitian_eig(h);
    const std::size_t n = h.dim();
    // Coefficients of psi0 in the eigenbasis.
    std::vector<cplx> a(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += std::conj(es.vectors(r, k)) * psi0.amplitudes()[r];
        a[k] = s;
    }
    std::vector<PureState> out;
    out.reserve(grid.points());
    std::vector<cplx> rotated(n), psi(n);
    for (std::size_t step = 0; step < grid.points(); ++step) {
        const double t = grid.time(step);
        for (std::size_t k = 0; k < n; ++k) rotated[k] = a[k] * std::exp(cplx(0.0, -es.values[k] * t));
        for (std::size_t r = 0; r < n; ++r) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += es.vectors(r, k) * rotated[k];
            psi[r] = s;
        }
        out.emplace_back(psi);
    }
    return out;
}

Evolution schrodinger_evolve(const HermitianOperator& h, const PureState& psi0, const GridSpec& grid) {
    Evolution ev;
    const auto states = schrodinger_states(h, psi0, grid);
    ev.times.reserve(states.size());
    ev.states.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        ev.times.push_back(grid.time(k));
        ev.states.push_back(states[k].projector());
    }
    return ev;
}

ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho) { return Generator(spec)(rho); }

void lindblad_integrate(const LindbladSpec& spec, const DensityMatrix& rho0, const GridSpec& grid,
                        const Observer& observer, const IntegratorOptions& opts) {
    grid.validate();
    if (spec.hamiltonian.dim() != rho0.dim()) throw ValidationError("lindblad_evolve: dimension mismatch");
    const Generator f(spec);
    const double dt = grid.dt();
    const cplx half(0.5 * dt), full(dt), sixth(dt / 6.0);
    const double trace0 = rho0.matrix().trace().real();
    const std::size_t every = opts.positivity_every == 0 ? 1 : opts.positivity_every;

    ComplexMatrix rho = rho0.matrix();
    observer(0, 0.0, rho);
    for (std::size_t k = 1; k <= grid.steps; ++k) {
        const ComplexMatrix k1 = f(rho);
        const ComplexMatrix k2 = f(rho + k1 * half);
        const ComplexMatrix k3 = f(rho + k2 * half);
        const ComplexMatrix k4 = f(rho + k3 * full);
        rho += (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * sixth;

        const double t = grid.time(k);
        if (!rho.is_finite()) step_failure("state became non-finite", t, grid);
        const double drift = std::abs(rho.trace().real() - trace0);
        if (drift > opts.trace_tolerance) {
            std::ostringstream os;
            os << "trace drift " << drift << " exceeds " << opts.trace_tolerance;
            step_failure(os.str(), t, grid);
        }
        if (k % every == 0 || k == grid.steps) {
            const double lmin = hermitian_eig(HermitianOperator(rho)).values.front();
            if (lmin < -opts.psd_tolerance) {
                std::ostringstream os;
                os << "minimum eigenvalue " << lmin << " below " << -opts.psd_tolerance;
                step_failure(os.str(), t, grid);
            }
        }
        observer(k, t, rho);
    }
}

Evolution lindblad_evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const GridSpec& grid,
                          const IntegratorOptions& opts) {
    Evolution ev;
    ev.times.reserve(grid.points());
    ev.states.reserve(grid.points());
    lindblad_integrate(
        spec, rho0, grid,
        [&](std::size_t, double t, const ComplexMatrix& rho) {
            ev.times.push_back(t);
            ev.states.push_back(DensityMatrix::trusted(rho));
        },
        opts);
    return ev;
}

measures::Trajectory to_trajectory(Evolution ev, const HermitianOperator& reference, double beta) {
    measures::Trajectory tr{std::move(ev.times), std::move(ev.states), {reference}, beta};
    tr.validate();
    return tr;
}

} // namespace qthermo::dynamics
