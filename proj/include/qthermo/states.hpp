// states.hpp: validated value types for operators, states and channels

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qthermo/matrix.hpp"

namespace qthermo {

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double norm = 1e-10;
inline constexpr double completeness = 1e-10;
} // namespace tol

// Hermitian matrix (Hamiltonians, observables). Energies use hbar = k_B = 1.
class HermitianOperator {
public:
    // Throws ValidationError when max|A - A^dagger| exceeds tol::hermitian
    // (scaled by max(1, max|A|)). The stored matrix is exactly Hermitian.
    explicit HermitianOperator(ComplexMatrix m);

    static HermitianOperator diagonal(std::span<const double> energies);
    static HermitianOperator zero(std::size_t dim);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

    friend HermitianOperator operator*(double s, const HermitianOperator& h) {
        return HermitianOperator(h.m_ * cplx(s));
    }
    friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
        return HermitianOperator(a.m_ + b.m_);
    }

private:
    ComplexMatrix m_;
};

// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
public:
    // Throws ValidationError naming the failed invariant.
    explicit DensityMatrix(ComplexMatrix m);

    // Skips the trace and spectrum checks (Hermiticity is still enforced by
    // symmetrization). For states produced by code paths that preserve the
    // invariants up to a documented integration tolerance.
    static DensityMatrix trusted(ComplexMatrix m);

    static DensityMatrix basis_state(std::size_t dim, std::size_t index);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix diagonal(std::span<const double> populations);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

private:
    struct TrustedTag {};
    DensityMatrix(ComplexMatrix m, TrustedTag);
    ComplexMatrix m_;
};

class PureState {
public:
    // Throws ValidationError unless | ||psi||^2 - 1 | <= tol::norm.
    explicit PureState(std::vector<cplx> amplitudes);
    static PureState basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    DensityMatrix projector() const;

private:
    std::vector<cplx> amps_;
};

// CPTP map in Kraus form; trace preservation is checked on construction.
class QuantumChannel {
public:
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

    static QuantumChannel identity(std::size_t dim);

    std::size_t dim() const noexcept { return kraus_.front().dim(); }
    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

    // max|sum K^dagger K - I|
    static double completeness_defect(const std::vector<ComplexMatrix>& kraus);

private:
    std::vector<ComplexMatrix> kraus_;
};

// Composition: first `a`, then `b`.
QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b);

} // namespace qthermo
