// linalg.hpp: spectral decomposition and composite-system primitives

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qthermo/matrix.hpp"
#include "qthermo/states.hpp"

namespace qthermo {

struct EigenSystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // unitary, column k pairs with values[k]
};

struct JacobiOptions {
    double relative_tolerance = 1e-13; // off-diagonal Frobenius norm vs ||A||_F
    int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NumericError if the sweep budget runs out.
EigenSystem hermitian_eig(const HermitianOperator& a, const JacobiOptions& opts = {});
// Same, validating Hermiticity first (ValidationError otherwise).
EigenSystem hermitian_eig(const ComplexMatrix& a, const JacobiOptions& opts = {});

// V diag(f(lambda)) V^dagger
ComplexMatrix spectral_map(const EigenSystem& es, const std::function<cplx(double)>& f);

// Kronecker product with (A (x) B)[i*dB + k, j*dB + l] = A[i,j] B[k,l].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
std::vector<cplx> tensor(std::span<const cplx> a, std::span<const cplx> b);

// Traces out every subsystem not listed in `keep`. Kept subsystems retain
// their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch);

enum class LogSupport {
    floored,  // eigenvalues below the floor are replaced by it
    required, // any eigenvalue < 1e-14 raises SupportError
};

inline constexpr double support_cutoff = 1e-14;

// Natural logarithm via eigendecomposition.
HermitianOperator matrix_log_hermitian(const HermitianOperator& a, double floor = 1e-300,
                                       LogSupport support = LogSupport::floored);

// exp(-i H t)
ComplexMatrix unitary_propagator(const HermitianOperator& h, double t);

} // namespace qthermo
