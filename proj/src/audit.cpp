#include "qthermo/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/io.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/measures.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo::audit {

namespace {

double uniform(random::Engine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_index(random::Engine& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// |v_i><v_j| in the computational basis
ComplexMatrix ket_bra(const ComplexMatrix& v, std::size_t i, std::size_t j) {
    const std::size_t n = v.dim();
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = v(r, i) * std::conj(v(c, j));
    return m;
}

ComplexMatrix projector_except(const ComplexMatrix& v, std::span<const std::size_t> skip) {
    ComplexMatrix m(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k)
        if (std::find(skip.begin(), skip.end(), k) == skip.end()) m += ket_bra(v, k, k);
    return m;
}

} // namespace

bool Report::ok() const noexcept {
    if (expect_violation) return failing_seeds.empty() && negative_entropy_cases > 0;
    return failing_seeds.empty();
}

std::uint64_t case_seed(std::uint64_t run_seed, std::size_t index) {
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

QuantumChannel gibbs_preserving_channel(random::Engine& rng, const HermitianOperator& h, double beta) {
    const EigenSystem es = hermitian_eig(h);
    const ComplexMatrix& v = es.vectors;
    const std::size_t n = h.dim();
    const thermo::Gibbs g = thermo::gibbs_state(h, beta);
    std::vector<double> pop(n);
    for (std::size_t k = 0; k < n; ++k) pop[k] = std::exp(-beta * es.values[k] - g.spec.log_Z);

    // Energy-preserving phases.
    ComplexMatrix u(n);
    for (std::size_t k = 0; k < n; ++k) u += ket_bra(v, k, k) * std::exp(cplx(0.0, uniform(rng, 0.0, 2.0 * M_PI)));
    const QuantumChannel phases({u});

    // Generalized amplitude damping between levels i < j obeying detailed balance.
    const std::size_t i = uniform_index(rng, 0, n - 2);
    const std::size_t j = uniform_index(rng, i + 1, n - 1);
    const double p = uniform(rng, 0.0, 1.0);
    const double eta = pop[i] / (pop[i] + pop[j]);
    const std::array<std::size_t, 2> pair{i, j};
    const ComplexMatrix rest = projector_except(v, pair);
    const ComplexMatrix pi_ = ket_bra(v, i, i), pj = ket_bra(v, j, j);
    const double sq = std::sqrt(1.0 - p);
    const QuantumChannel exchange({
        (pi_ + pj * cplx(sq) + rest) * cplx(std::sqrt(eta)),
        ket_bra(v, i, j) * cplx(std::sqrt(eta * p)),
        (pi_ * cplx(sq) + pj + rest) * cplx(std::sqrt(1.0 - eta)),
        ket_bra(v, j, i) * cplx(std::sqrt((1.0 - eta) * p)),
    });

    // Replacement by the Gibbs state with probability q.
    const double q = uniform(rng, 0.0, 1.0);
    std::vector<ComplexMatrix> thermalize{ComplexMatrix::identity(n) * cplx(std::sqrt(1.0 - q))};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) thermalize.push_back(ket_bra(v, a, b) * cplx(std::sqrt(q * pop[a])));

    return compose(compose(phases, exchange), QuantumChannel(std::move(thermalize)));
}

QuantumChannel ground_state_damping(const HermitianOperator& h, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("ground_state_damping: p must lie in [0, 1]");
    const EigenSystem es = hermitian_eig(h);
    const ComplexMatrix& v = es.vectors;
    const std::size_t n = h.dim();
    ComplexMatrix k0 = ket_bra(v, 0, 0);
    for (std::size_t k = 1; k < n; ++k) k0 += ket_bra(v, k, k) * cplx(std::sqrt(1.0 - p));
    std::vector<ComplexMatrix> kraus{k0};
    for (std::size_t k = 1; k < n; ++k) kraus.push_back(ket_bra(v, 0, k) * cplx(std::sqrt(p)));
    return QuantumChannel(std::move(kraus));
}

CaseResult run_case(std::size_t index, std::uint64_t seed, const Options& opts) {
    random::Engine rng(seed);
    CaseResult c;
    c.index = index;
    c.seed = seed;
    c.dim = uniform_index(rng, opts.min_dim, opts.max_dim);

    HermitianOperator h = random::hermitian(rng, c.dim, opts.hamiltonian_scale);
    DensityMatrix rho0 = random::density(rng, c.dim);
    std::optional<QuantumChannel> channel;
    if (!opts.expect_violation) {
        c.beta = uniform(rng, opts.beta_min, opts.beta_max);
        channel = gibbs_preserving_channel(rng, h, c.beta);
    } else if (index == 0) {
        // Constructed counterexample: Gibbs input, full decay to the ground level.
        c.beta = 0.5;
        rho0 = thermo::gibbs_state(h, c.beta).state;
        channel = ground_state_damping(h, 1.0);
    } else {
        c.beta = uniform(rng, 0.1, 0.5);
        const double mix = uniform(rng, 0.0, 0.3);
        ComplexMatrix m = thermo::gibbs_state(h, c.beta).state.matrix() * cplx(1.0 - mix) + rho0.matrix() * cplx(mix);
        rho0 = DensityMatrix(std::move(m));
        channel = ground_state_damping(h, uniform(rng, 0.3, 1.0));
    }
    const DensityMatrix rhotau = apply_channel(rho0, *channel);

    c.delta_S_ir = thermo::delta_S_ir(rho0, h, rhotau, h, c.beta);
    for (const DensityMatrix* rho : std::array<const DensityMatrix*, 2>{&rho0, &rhotau}) {
        const auto rel = thermo::relative_entropy(*rho, thermo::gibbs_state(h, c.beta).state);
        const double wf = thermo::extractable_work(*rho, h, c.beta);
        const double r = rel ? std::abs(wf - *rel / c.beta) : std::numeric_limits<double>::infinity();
        c.free_energy_residual = std::max(c.free_energy_residual, r);
    }
    c.work_split_residual = std::abs(measures::work_split(rho0, h, rhotau, h, c.beta).residual);

    c.passed = c.free_energy_residual <= opts.tol.free_energy_identity && c.work_split_residual <= opts.tol.work_split;
    if (!opts.expect_violation) c.passed = c.passed && c.delta_S_ir >= -opts.tol.contractivity;
    return c;
}

Report run(const Options& opts) {
    if (opts.min_dim < 2 || opts.max_dim < opts.min_dim) throw ValidationError("audit: need 2 <= min_dim <= max_dim");
    Report r;
    r.expect_violation = opts.expect_violation;
    r.cases.reserve(opts.count);
    for (std::size_t k = 0; k < opts.count; ++k) {
        CaseResult c = run_case(k, case_seed(opts.seed, k), opts);
        if (!c.passed) r.failing_seeds.push_back(c.seed);
        if (c.delta_S_ir < -opts.tol.contractivity) ++r.negative_entropy_cases;
        r.cases.push_back(c);
    }
    return r;
}

void write_csv(std::ostream& os, const Report& r) {
    os << "index,seed,dim,beta,delta_S_ir,free_energy_residual,work_split_residual,passed\n";
    for (const auto& c : r.cases) {
        os << c.index << ',' << c.seed << ',' << c.dim << ',' << io::format_number(c.beta) << ','
           << io::format_number(c.delta_S_ir) << ',' << io::format_number(c.free_energy_residual) << ','
           << io::format_number(c.work_split_residual) << ',' << (c.passed ? 1 : 0) << '\n';
    }
}

std::string summary(const Report& r) {
    std::ostringstream os;
    os << "audit: " << r.cases.size() << " cases, " << r.failing_seeds.size() << " failures";
    if (r.expect_violation) os << ", " << r.negative_entropy_cases << " cases with negative delta_S_ir";
    os << (r.ok() ? " [PASS]" : " [FAIL]") << '\n';
    for (auto s : r.failing_seeds) os << "  failing seed: " << s << '\n';
    return os.str();
}

} // namespace qthermo::audit
