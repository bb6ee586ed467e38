#include "qthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo::thermo {

namespace {

void require_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        std::ostringstream os;
        os << "inverse temperature must be positive and finite, got " << beta;
        throw ValidationError(os.str());
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw ValidationError(std::string(what) + ": dimension mismatch");
}

// <v_k| m |v_k> for every column of vecs
std::vector<double> diagonal_in_basis(const ComplexMatrix& m, const ComplexMatrix& vecs) {
    const std::size_t n = m.dim();
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += m(i, j) * vecs(j, k);
            s += std::conj(vecs(i, k)) * row;
        }
        d[k] = s.real();
    }
    return d;
}

} // namespace

double shannon_entropy(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eig(HermitianOperator(rho.matrix()));
    if (es.values.front() < -tol::psd) {
        std::ostringstream os;
        os << "von_neumann_entropy: eigenvalue " << es.values.front() << " below -1e-10";
        throw ValidationError(os.str());
    }
    return shannon_entropy(es.values);
}

std::optional<double> relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
    const EigenSystem ss = hermitian_eig(HermitianOperator(sigma.matrix()));
    const std::vector<double> weights = diagonal_in_basis(rho.matrix(), ss.vectors);

    double cross = 0.0; // Tr[rho ln sigma]
    for (std::size_t k = 0; k < ss.values.size(); ++k) {
        if (ss.values[k] < sigma_cutoff) {
            if (weights[k] > weight_cutoff) return std::nullopt;
            continue;
        }
        cross += weights[k] * std::log(ss.values[k]);
    }
    return -von_neumann_entropy(rho) - cross;
}

GibbsSpec gibbs_spec(const HermitianOperator& h, double beta) {
    require_beta(beta);
    const EigenSystem es = hermitian_eig(h);
    const double e0 = es.values.front();
    double sum = 0.0;
    for (double e : es.values) sum += std::exp(-beta * (e - e0));
    const double log_Z = -beta * e0 + std::log(sum);
    return {beta, std::exp(log_Z), log_Z};
}

Gibbs gibbs_state(const HermitianOperator& h, double beta) {
    require_beta(beta);
    const EigenSystem es = hermitian_eig(h);
    const double e0 = es.values.front();
    double sum = 0.0;
    for (double e : es.values) sum += std::exp(-beta * (e - e0));
    const double log_Z = -beta * e0 + std::log(sum);
    ComplexMatrix pi = spectral_map(es, [&](double e) { return cplx(std::exp(-beta * (e - e0)) / sum); });
    return {DensityMatrix::trusted(std::move(pi)), {beta, std::exp(log_Z), log_Z}};
}

ComplexMatrix gibbs_log(const HermitianOperator& h, const GibbsSpec& spec) {
    ComplexMatrix l = h.matrix() * cplx(-spec.beta);
    for (std::size_t i = 0; i < l.dim(); ++i) l(i, i) -= spec.log_Z;
    return l;
}

double relative_entropy_to_gibbs(const DensityMatrix& rho, const HermitianOperator& h, double beta) {
    require_same_dim(rho.dim(), h.dim(), "relative_entropy_to_gibbs");
    const GibbsSpec spec = gibbs_spec(h, beta);
    // Tr[rho ln pi] = -beta Tr[rho H] - ln Z  (Tr rho = 1)
    return -von_neumann_entropy(rho) + beta * energy(rho, h) + spec.log_Z * rho.matrix().trace().real();
}

DensityMatrix passive_state(const DensityMatrix& rho, const HermitianOperator& h) {
    require_same_dim(rho.dim(), h.dim(), "passive_state");
    const EigenSystem rs = hermitian_eig(HermitianOperator(rho.matrix()));
    const EigenSystem hs = hermitian_eig(h);
    std::vector<double> r(rs.values.rbegin(), rs.values.rend());
    const std::size_t n = rho.dim();
    ComplexMatrix pi(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += hs.vectors(i, k) * r[k] * std::conj(hs.vectors(j, k));
            pi(i, j) = s;
        }
    return DensityMatrix::trusted(std::move(pi));
}

double energy(const DensityMatrix& rho, const HermitianOperator& h) {
    require_same_dim(rho.dim(), h.dim(), "energy");
    return trace_product(rho.matrix(), h.matrix()).real();
}

double ergotropy(const DensityMatrix& rho, const HermitianOperator& h) {
    return energy(rho, h) - energy(passive_state(rho, h), h);
}

double free_energy(const DensityMatrix& rho, const HermitianOperator& h, double beta) {
    require_beta(beta);
    return energy(rho, h) - von_neumann_entropy(rho) / beta;
}

double extractable_work(const DensityMatrix& rho, const HermitianOperator& h, double beta) {
    const Gibbs g = gibbs_state(h, beta);
    return free_energy(rho, h, beta) - free_energy(g.state, h, beta);
}

double delta_S_ir(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                  const HermitianOperator& htau, double beta) {
    return relative_entropy_to_gibbs(rho0, h0, beta) - relative_entropy_to_gibbs(rhotau, htau, beta);
}

double delta_S_r(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                 const HermitianOperator& htau, double beta) {
    require_beta(beta);
    const Gibbs g0 = gibbs_state(h0, beta);
    const Gibbs gt = gibbs_state(htau, beta);
    const double dev_tau = energy(rhotau, htau) - energy(gt.state, htau);
    const double dev_0 = energy(rho0, h0) - energy(g0.state, h0);
    return -beta * (dev_tau - dev_0);
}

double heat(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
            const HermitianOperator& htau, double beta) {
    return -delta_S_r(rho0, h0, rhotau, htau, beta) / beta;
}

double adiabatic_work_gibbs(const HermitianOperator& h0, const HermitianOperator& htau, double beta) {
    return energy(gibbs_state(htau, beta).state, htau) - energy(gibbs_state(h0, beta).state, h0);
}

double adiabatic_work_passive(const DensityMatrix& rhotau, const HermitianOperator& h0,
                              const HermitianOperator& htau) {
    require_same_dim(h0.dim(), htau.dim(), "adiabatic_work_passive");
    // pi_m: spectrum of rhotau with passive ordering on the eigenbasis of H0.
    const DensityMatrix pi_tau = passive_state(rhotau, htau);
    const DensityMatrix pi_m = passive_state(rhotau, h0);
    return energy(pi_tau, htau) - energy(pi_m, h0);
}

double operational_heat(const DensityMatrix& rho0, const DensityMatrix& rhotau, const HermitianOperator& h0) {
    return energy(passive_state(rhotau, h0), h0) - energy(passive_state(rho0, h0), h0);
}

ThermoLedger first_law_ledger(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                              const HermitianOperator& htau, double beta) {
    require_beta(beta);
    require_same_dim(rho0.dim(), h0.dim(), "first_law_ledger");
    require_same_dim(rhotau.dim(), htau.dim(), "first_law_ledger");
    require_same_dim(rho0.dim(), rhotau.dim(), "first_law_ledger");

    const Gibbs g0 = gibbs_state(h0, beta);
    const Gibbs gt = gibbs_state(htau, beta);

    ThermoLedger l;
    l.delta_E = energy(rhotau, htau) - energy(rho0, h0);
    l.delta_We = ergotropy(rhotau, htau) - ergotropy(rho0, h0);
    l.delta_Wf = extractable_work(rhotau, htau, beta) - extractable_work(rho0, h0, beta);
    l.adiabatic_work = adiabatic_work_passive(rhotau, h0, htau);
    l.adiabatic_work_gibbs = energy(gt.state, htau) - energy(g0.state, h0);
    l.operational_heat = operational_heat(rho0, rhotau, h0);
    l.delta_S_rho = von_neumann_entropy(rhotau) - von_neumann_entropy(rho0);
    l.delta_S_gibbs = von_neumann_entropy(gt.state) - von_neumann_entropy(g0.state);
    l.delta_S_ir = delta_S_ir(rho0, h0, rhotau, htau, beta);
    l.delta_S_r = delta_S_r(rho0, h0, rhotau, htau, beta);
    l.heat = -l.delta_S_r / beta;
    l.residual_first_law = l.delta_E - (l.delta_We + l.adiabatic_work + l.operational_heat);
    l.residual_fundamental = l.delta_E - (l.delta_Wf + l.adiabatic_work_gibbs + (l.delta_S_rho - l.delta_S_gibbs) / beta);
    return l;
}

} // namespace qthermo::thermo
