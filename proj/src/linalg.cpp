#include "qthermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p,q) with U = diag(1, e^{-i arg a_pq}) * [[c, s], [-s, c]],
// updating a <- U^dagger a U and v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = std::conj(apq) / mag; // e^{-i phi}

    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    double t;
    if (std::abs(tau) > 1e150) {
        t = 0.5 / tau;
    } else {
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cplx upp = c, upq = s, uqp = -s * phase, uqq = c * phase;
    const std::size_t n = a.dim();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * upp + vkq * uqp;
        v(k, q) = vkp * upq + vkq * uqq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

} // namespace

EigenSystem hermitian_eig(const HermitianOperator& op, const JacobiOptions& opts) {
    ComplexMatrix a = op.matrix();
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = opts.relative_tolerance * a.frobenius_norm();

    bool converged = off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        converged = off_diagonal_norm(a) <= threshold;
    }
    if (!converged) {
        throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) +
                           " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[k]);
    }
    return es;
}

EigenSystem hermitian_eig(const ComplexMatrix& a, const JacobiOptions& opts) {
    return hermitian_eig(HermitianOperator(a), opts);
}

ComplexMatrix spectral_map(const EigenSystem& es, const std::function<cplx(double)>& f) {
    const std::size_t n = es.values.size();
    std::vector<cplx> fv(n);
    for (std::size_t k = 0; k < n; ++k) fv[k] = f(es.values[k]);
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += es.vectors(i, k) * fv[k] * std::conj(es.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix r(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) r(i * db + k, j * db + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw ValidationError("tensor product of an empty list");
    ComplexMatrix r = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) r = tensor(r, factors[k]);
    return r;
}

std::vector<cplx> tensor(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (dims.empty()) throw ValidationError("partial_trace: empty subsystem list");
    if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != m.dim()) {
        throw ValidationError("partial_trace: product of subsystem dims " + std::to_string(total) +
                              " != matrix dim " + std::to_string(m.dim()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw ValidationError("partial_trace: keep index out of range");
        kept[k] = true;
    }

    // Split every full index into (kept multi-index, traced multi-index).
    std::size_t dim_keep = 1;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (kept[s]) dim_keep *= dims[s];
    std::vector<std::size_t> keep_idx(total), trace_idx(total);
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t rem = f, ki = 0, ti = 0, kstride = 1, tstride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                ki += digit * kstride;
                kstride *= dims[s];
            } else {
                ti += digit * tstride;
                tstride *= dims[s];
            }
        }
        keep_idx[f] = ki;
        trace_idx[f] = ti;
    }

    ComplexMatrix r(dim_keep);
    for (std::size_t f = 0; f < total; ++f)
        for (std::size_t g = 0; g < total; ++g)
            if (trace_idx[f] == trace_idx[g]) r(keep_idx[f], keep_idx[g]) += m(f, g);
    return r;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    return DensityMatrix::trusted(partial_trace(rho.matrix(), dims, keep));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch) {
    if (rho.dim() != ch.dim()) throw ValidationError("apply_channel: state and channel dims differ");
    ComplexMatrix out(rho.dim());
    for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix(std::move(out));
}

HermitianOperator matrix_log_hermitian(const HermitianOperator& a, double floor, LogSupport support) {
    const EigenSystem es = hermitian_eig(a);
    if (support == LogSupport::required) {
        for (double l : es.values)
            if (l < support_cutoff)
                throw SupportError("matrix log requires full support; eigenvalue " + std::to_string(l));
    }
    return HermitianOperator(spectral_map(es, [floor](double l) { return std::log(std::max(l, floor)); }));
}

ComplexMatrix unitary_propagator(const HermitianOperator& h, double t) {
    const EigenSystem es = hermitian_eig(h);
    return spectral_map(es, [t](double l) { return std::exp(cplx(0.0, -l * t)); });
}

} // namespace qthermo
