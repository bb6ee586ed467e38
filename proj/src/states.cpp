#include "qthermo/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    ComplexMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        r(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            const cplx z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            r(i, j) = z;
            r(j, i) = std::conj(z);
        }
    }
    return r;
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
    if (m.dim() == 0) throw ValidationError(std::string(what) + ": empty matrix");
    if (!m.is_finite()) throw ValidationError(std::string(what) + ": non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > tol::hermitian * std::max(1.0, m.max_abs())) {
        std::ostringstream os;
        os << what << ": not Hermitian (max|A - A^dagger| = " << defect << ")";
        throw ValidationError(os.str());
    }
}

} // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) {
    require_hermitian(m, "HermitianOperator");
    m_ = hermitian_part(m);
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> energies) {
    return HermitianOperator(ComplexMatrix::diagonal(energies));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) { return HermitianOperator(ComplexMatrix(dim)); }

DensityMatrix::DensityMatrix(ComplexMatrix m) {
    require_hermitian(m, "DensityMatrix");
    m_ = hermitian_part(m);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr << " differs from 1";
        throw ValidationError(os.str());
    }
    const double lmin = hermitian_eig(HermitianOperator(m_)).values.front();
    if (lmin < -tol::psd) {
        std::ostringstream os;
        os << "DensityMatrix: not positive semidefinite (min eigenvalue " << lmin << ")";
        throw ValidationError(os.str());
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, TrustedTag) : m_(hermitian_part(m)) {}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ValidationError("basis_state: index out of range");
    ComplexMatrix m(dim);
    m(index, index) = 1.0;
    return trusted(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return trusted(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
    return DensityMatrix(ComplexMatrix::diagonal(populations));
}

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw ValidationError("PureState: no amplitudes");
    double n2 = 0.0;
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw ValidationError("PureState: non-finite amplitude");
        n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > tol::norm) {
        std::ostringstream os;
        os << "PureState: squared norm " << n2 << " differs from 1";
        throw ValidationError(os.str());
    }
}

PureState PureState::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ValidationError("basis_state: index out of range");
    std::vector<cplx> a(dim);
    a[index] = 1.0;
    return PureState(std::move(a));
}

DensityMatrix PureState::projector() const { return DensityMatrix::trusted(ComplexMatrix::outer(amps_, amps_)); }

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("QuantumChannel: no Kraus operators");
    const std::size_t d = kraus_.front().dim();
    for (const auto& k : kraus_) {
        if (k.dim() != d) throw ValidationError("QuantumChannel: Kraus operators differ in dimension");
        if (!k.is_finite()) throw ValidationError("QuantumChannel: non-finite Kraus entries");
    }
    const double defect = completeness_defect(kraus_);
    if (defect > tol::completeness) {
        std::ostringstream os;
        os << "QuantumChannel: completeness violated (max|sum K^dagger K - I| = " << defect << ")";
        throw ValidationError(os.str());
    }
}

QuantumChannel QuantumChannel::identity(std::size_t dim) { return QuantumChannel({ComplexMatrix::identity(dim)}); }

double QuantumChannel::completeness_defect(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) return 1.0;
    ComplexMatrix s(kraus.front().dim());
    for (const auto& k : kraus) s += k.adjoint() * k;
    return max_abs_diff(s, ComplexMatrix::identity(s.dim()));
}

QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.dim() != b.dim()) throw ValidationError("compose: channel dims differ");
    std::vector<ComplexMatrix> k;
    k.reserve(a.kraus().size() * b.kraus().size());
    for (const auto& kb : b.kraus())
        for (const auto& ka : a.kraus()) k.push_back(kb * ka);
    return QuantumChannel(std::move(k));
}

} // namespace qthermo
