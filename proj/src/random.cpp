#include "qthermo/random.hpp"

#include <cmath>
#include <vector>

#include "qthermo/errors.hpp"

namespace qthermo::random {

namespace {

cplx gaussian(Engine& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

// Orthonormalises the columns of a rows x cols column-major block in place
// (modified Gram-Schmidt, two passes).
void orthonormalize(std::vector<std::vector<cplx>>& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx dot = 0.0;
                for (std::size_t r = 0; r < cols[j].size(); ++r) dot += std::conj(cols[i][r]) * cols[j][r];
                for (std::size_t r = 0; r < cols[j].size(); ++r) cols[j][r] -= dot * cols[i][r];
            }
        }
        double nrm = 0.0;
        for (const auto& z : cols[j]) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) throw NumericError("orthonormalize: rank-deficient Gaussian sample");
        for (auto& z : cols[j]) z /= nrm;
    }
}

} // namespace

HermitianOperator hermitian(Engine& rng, std::size_t dim, double scale) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian(rng);
    return HermitianOperator((g + g.adjoint()) * cplx(0.5 * scale));
}

DensityMatrix density(Engine& rng, std::size_t dim) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian(rng);
    ComplexMatrix r = g * g.adjoint();
    r *= cplx(1.0 / r.trace().real());
    return DensityMatrix(std::move(r));
}

PureState pure(Engine& rng, std::size_t dim) {
    std::vector<cplx> a(dim);
    double n2 = 0.0;
    for (auto& z : a) {
        z = gaussian(rng);
        n2 += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(n2);
    return PureState(std::move(a));
}

ComplexMatrix unitary(Engine& rng, std::size_t dim) {
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (auto& c : cols)
        for (auto& z : c) z = gaussian(rng);
    orthonormalize(cols);
    ComplexMatrix u(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t r = 0; r < dim; ++r) u(r, j) = cols[j][r];
    return u;
}

QuantumChannel channel(Engine& rng, std::size_t dim, std::size_t count) {
    if (count == 0) throw ValidationError("random::channel needs at least one Kraus operator");
    const std::size_t rows = dim * count;
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(rows));
    for (auto& c : cols)
        for (auto& z : c) z = gaussian(rng);
    orthonormalize(cols);
    std::vector<ComplexMatrix> kraus(count, ComplexMatrix(dim));
    for (std::size_t b = 0; b < count; ++b)
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t j = 0; j < dim; ++j) kraus[b](r, j) = cols[j][b * dim + r];
    return QuantumChannel(std::move(kraus));
}

} // namespace qthermo::random
