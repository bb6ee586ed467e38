// support.hpp: oracles shared by the unit and acceptance tests

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "qthermo/linalg.hpp"
#include "qthermo/random.hpp"
#include "qthermo/states.hpp"
#include "qthermo/thermo.hpp"

namespace testing {

using namespace qthermo;

inline HermitianOperator diag_h(std::initializer_list<double> e) {
    std::vector<double> v(e);
    return HermitianOperator::diagonal(v);
}

inline DensityMatrix diag_rho(std::initializer_list<double> p) {
    std::vector<double> v(p);
    return DensityMatrix::diagonal(v);
}

inline DensityMatrix plus_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState({s, s}).projector();
}

// min over all assignments of rho's eigenvalues to energy levels of sum p_k e_k
inline double brute_force_passive_energy(const DensityMatrix& rho, const HermitianOperator& h) {
    const auto p = hermitian_eig(rho.matrix()).values;
    const auto e = hermitian_eig(h).values;
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) s += p[perm[k]] * e[k];
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline double brute_force_ergotropy(const DensityMatrix& rho, const HermitianOperator& h) {
    return thermo::energy(rho, h) - brute_force_passive_energy(rho, h);
}

// Tr over the last factor of an (a x b) bipartite matrix by explicit index contraction.
inline ComplexMatrix trace_last(const ComplexMatrix& m, std::size_t a, std::size_t b) {
    ComplexMatrix r(a);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            for (std::size_t k = 0; k < b; ++k) r(i, j) += m(i * b + k, j * b + k);
    return r;
}

inline std::size_t sign_changes(std::span<const double> v, double eps = 0.0) {
    std::size_t n = 0;
    int last = 0;
    for (double x : v) {
        const int s = x > eps ? 1 : (x < -eps ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++n;
        last = s;
    }
    return n;
}

// Values of strict local maxima, in order.
inline std::vector<double> local_maxima(std::span<const double> v) {
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
        if (v[k] > v[k - 1] && v[k] >= v[k + 1]) peaks.push_back(v[k]);
    return peaks;
}

// Largest increase between consecutive samples (0 for non-increasing input).
inline double max_rise(std::span<const double> v) {
    double r = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) r = std::max(r, v[k] - v[k - 1]);
    return r;
}

struct Process {
    DensityMatrix rho0, rhotau;
    HermitianOperator h0, htau;
    double beta;
};

// Random endpoints of a process with a time-dependent Hamiltonian. beta and
// the Hamiltonian scale keep Gibbs populations above ~1e-3 so numerically
// diagonalised Gibbs states stay well conditioned.
inline Process random_process(random::Engine& rng) {
    std::uniform_int_distribution<std::size_t> dim(2, 4);
    std::uniform_real_distribution<double> beta(0.1, 2.0);
    const std::size_t n = dim(rng);
    return {random::density(rng, n), random::density(rng, n), random::hermitian(rng, n, 0.5),
            random::hermitian(rng, n, 0.5), beta(rng)};
}

} // namespace testing
