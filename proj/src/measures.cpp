#include "qthermo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo::measures {

namespace {

// Thermal reference data that depends only on the Hamiltonian.
struct Reference {
    ComplexMatrix basis;
    thermo::GibbsSpec gibbs;
    double gibbs_free_energy = 0.0;
};

Reference make_reference(const HermitianOperator& h, double beta) {
    const thermo::Gibbs g = thermo::gibbs_state(h, beta);
    return {energy_basis(h), g.spec, thermo::free_energy(g.state, h, beta)};
}

struct Point {
    double E = 0.0;
    double S = 0.0;
    double S_dephased = 0.0;
    double log_Z = 0.0;
    double rel_gibbs = 0.0; // S(rho || pi^beta)
    double W_f = 0.0;
};

Point evaluate(const DensityMatrix& rho, const HermitianOperator& h, const Reference& ref, double beta) {
    Point p;
    p.E = thermo::energy(rho, h);
    p.S = thermo::von_neumann_entropy(rho);
    p.S_dephased = thermo::shannon_entropy(energy_populations(rho, ref.basis));
    p.log_Z = ref.gibbs.log_Z;
    p.rel_gibbs = -p.S + beta * p.E + p.log_Z;
    p.W_f = p.E - p.S / beta - ref.gibbs_free_energy;
    return p;
}

std::vector<Point> evaluate_all(const Trajectory& tr) {
    tr.validate();
    std::vector<Point> pts;
    pts.reserve(tr.states.size());
    if (tr.constant_hamiltonian()) {
        const Reference ref = make_reference(tr.hamiltonians.front(), tr.beta);
        for (const auto& rho : tr.states) pts.push_back(evaluate(rho, tr.hamiltonians.front(), ref, tr.beta));
    } else {
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
            const Reference ref = make_reference(tr.hamiltonians[k], tr.beta);
            pts.push_back(evaluate(tr.states[k], tr.hamiltonians[k], ref, tr.beta));
        }
    }
    return pts;
}

template <class F>
std::vector<double> column(const std::vector<Point>& pts, F f) {
    std::vector<double> c(pts.size());
    std::transform(pts.begin(), pts.end(), c.begin(), f);
    return c;
}

std::vector<double> scaled(std::vector<double> v, double s) {
    for (auto& x : v) x *= s;
    return v;
}

std::vector<double> s_ir_column(const std::vector<Point>& pts) {
    const double anchor = pts.front().rel_gibbs;
    return column(pts, [anchor](const Point& p) { return anchor - p.rel_gibbs; });
}

std::vector<double> incoherent_power(const Trajectory& tr, const std::vector<Point>& pts) {
    const double dt = tr.dt();
    const auto dE = derivative(column(pts, [](const Point& p) { return p.E; }), dt);
    const auto dSd = derivative(column(pts, [](const Point& p) { return p.S_dephased; }), dt);
    std::vector<double> out(pts.size());
    if (tr.constant_hamiltonian()) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = dE[k] - dSd[k] / tr.beta;
    } else {
        // (dZ/dt)/Z = d ln Z / dt
        const auto dlogZ = derivative(column(pts, [](const Point& p) { return p.log_Z; }), dt);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = dE[k] - (dSd[k] - dlogZ[k]) / tr.beta;
    }
    return out;
}

} // namespace

void Trajectory::validate() const {
    if (times.size() < 3) throw ValidationError("trajectory needs at least 3 grid points");
    if (states.size() != times.size()) throw ValidationError("trajectory: states and times differ in length");
    if (hamiltonians.size() != 1 && hamiltonians.size() != times.size())
        throw ValidationError("trajectory: need one Hamiltonian or one per grid point");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("trajectory: beta must be positive");
    const double step = times[1] - times[0];
    if (!(step > 0.0)) throw ValidationError("trajectory: grid must be strictly increasing");
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double d = times[k] - times[k - 1];
        if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(times[k]))) {
            std::ostringstream os;
            os << "trajectory: non-uniform grid at index " << k;
            throw ValidationError(os.str());
        }
    }
    const std::size_t n = states.front().dim();
    for (const auto& s : states)
        if (s.dim() != n) throw ValidationError("trajectory: state dimensions differ");
    for (const auto& h : hamiltonians)
        if (h.dim() != n) throw ValidationError("trajectory: Hamiltonian and state dimensions differ");
}

ComplexMatrix energy_basis(const HermitianOperator& h) {
    const EigenSystem es = hermitian_eig(h);
    const std::size_t n = h.dim();
    ComplexMatrix basis = es.vectors;
    double scale = 1.0;
    for (double l : es.values) scale = std::max(scale, std::abs(l));
    const double tol = 1e-10 * scale;

    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && es.values[end] - es.values[end - 1] <= tol) ++end;
        const std::size_t m = end - start;
        if (m > 1) {
            // Restriction of diag(0..n-1) to the eigenspace.
            ComplexMatrix sub(m);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    cplx s = 0.0;
                    for (std::size_t r = 0; r < n; ++r)
                        s += std::conj(es.vectors(r, start + a)) * static_cast<double>(r) * es.vectors(r, start + b);
                    sub(a, b) = s;
                }
            const EigenSystem ws = hermitian_eig(HermitianOperator(sub));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t b = 0; b < m; ++b) {
                    cplx s = 0.0;
                    for (std::size_t a = 0; a < m; ++a) s += es.vectors(r, start + a) * ws.vectors(a, b);
                    basis(r, start + b) = s;
                }
        }
        start = end;
    }
    return basis;
}

std::vector<double> energy_populations(const DensityMatrix& rho, const ComplexMatrix& basis) {
    if (rho.dim() != basis.dim()) throw ValidationError("energy_populations: dimension mismatch");
    const std::size_t n = rho.dim();
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += rho.matrix()(i, j) * basis(j, k);
            s += std::conj(basis(i, k)) * row;
        }
        p[k] = s.real();
    }
    return p;
}

DensityMatrix dephase(const DensityMatrix& rho, const HermitianOperator& h) {
    if (rho.dim() != h.dim()) throw ValidationError("dephase: dimension mismatch");
    const ComplexMatrix basis = energy_basis(h);
    const std::vector<double> p = energy_populations(rho, basis);
    const std::size_t n = rho.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += basis(i, k) * p[k] * std::conj(basis(j, k));
            out(i, j) = s;
        }
    return DensityMatrix::trusted(std::move(out));
}

double coherence(const DensityMatrix& rho, const HermitianOperator& h) {
    if (rho.dim() != h.dim()) throw ValidationError("coherence: dimension mismatch");
    return thermo::shannon_entropy(energy_populations(rho, energy_basis(h))) - thermo::von_neumann_entropy(rho);
}

std::vector<double> derivative(std::span<const double> f, double dt) {
    const std::size_t n = f.size();
    if (n < 3) throw ValidationError("derivative needs at least 3 samples");
    if (!(dt > 0.0)) throw ValidationError("derivative needs dt > 0");
    std::vector<double> d(n);
    const double h2 = 2.0 * dt;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / h2;
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / h2;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / h2;
    return d;
}

std::vector<double> irreversible_entropy_series(const Trajectory& tr) { return s_ir_column(evaluate_all(tr)); }

std::vector<double> non_markovianity_series(const Trajectory& tr) {
    return scaled(derivative(irreversible_entropy_series(tr), tr.dt()), -1.0);
}

std::vector<double> charging_power_series(const Trajectory& tr) {
    return scaled(non_markovianity_series(tr), 1.0 / tr.beta);
}

std::vector<double> coherent_power_series(const Trajectory& tr) {
    const auto pts = evaluate_all(tr);
    const auto c = column(pts, [](const Point& p) { return p.S_dephased - p.S; });
    return scaled(derivative(c, tr.dt()), 1.0 / tr.beta);
}

std::vector<double> incoherent_power_series(const Trajectory& tr) { return incoherent_power(tr, evaluate_all(tr)); }

MeasureSeries compute(const Trajectory& tr) {
    const auto pts = evaluate_all(tr);
    const double dt = tr.dt();
    MeasureSeries m;
    m.t = tr.times;
    m.E = column(pts, [](const Point& p) { return p.E; });
    m.S = column(pts, [](const Point& p) { return p.S; });
    m.C_r = column(pts, [](const Point& p) { return p.S_dephased - p.S; });
    m.S_ir = s_ir_column(pts);
    m.I = scaled(derivative(m.S_ir, dt), -1.0);
    m.P = scaled(m.I, 1.0 / tr.beta);
    m.P_c = scaled(derivative(m.C_r, dt), 1.0 / tr.beta);
    m.P_i = incoherent_power(tr, pts);
    m.W_f = column(pts, [](const Point& p) { return p.W_f; });
    return m;
}

WorkSplit work_split(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                     const HermitianOperator& htau, double beta) {
    const Reference r0 = make_reference(h0, beta);
    const Reference rt = make_reference(htau, beta);
    const Point p0 = evaluate(rho0, h0, r0, beta);
    const Point pt = evaluate(rhotau, htau, rt, beta);

    WorkSplit w;
    w.delta_Wf = thermo::extractable_work(rhotau, htau, beta) - thermo::extractable_work(rho0, h0, beta);
    w.coherent = ((pt.S_dephased - pt.S) - (p0.S_dephased - p0.S)) / beta;
    w.incoherent = (pt.E - p0.E) - ((pt.S_dephased - p0.S_dephased) - (pt.log_Z - p0.log_Z)) / beta;
    w.residual = w.delta_Wf - (w.coherent + w.incoherent);
    return w;
}

const std::vector<double>& MeasureSeries::column(std::string_view name) const {
    if (name == "t") return t;
    if (name == "E") return E;
    if (name == "S") return S;
    if (name == "C_r") return C_r;
    if (name == "S_ir") return S_ir;
    if (name == "I") return I;
    if (name == "P") return P;
    if (name == "P_c") return P_c;
    if (name == "P_i") return P_i;
    if (name == "W_f") return W_f;
    throw ValidationError("unknown measure column \"" + std::string(name) + "\"");
}

} // namespace qthermo::measures
