// matrix.hpp: dense complex square matrices for small Hilbert spaces

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qthermo {

using cplx = std::complex<double>;

// Row-major square matrix. Intended for dimensions up to a few dozen.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    // Throws ValidationError if entries.size() != dim*dim or any entry is non-finite.
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> diag);
    // |a><b|
    static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b);

    std::size_t dim() const noexcept { return dim_; }
    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }
    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const noexcept;
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;
    bool is_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// y = A x
std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> x);

// Tr[A B] without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// max |A - A^dagger|
double hermiticity_defect(const ComplexMatrix& a) noexcept;

// max |A - B|; dims must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qthermo
