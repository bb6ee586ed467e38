#include <doctest.h>

#include <cmath>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/random.hpp"
#include "qthermo/thermo.hpp"
#include "support.hpp"

using namespace qthermo;
using namespace qthermo::thermo;
using doctest::Approx;
using testing::diag_h;
using testing::diag_rho;

namespace {
const auto H01 = diag_h({0.0, 1.0});
const auto excited = DensityMatrix::basis_state(2, 1);
} // namespace

TEST_CASE("von Neumann entropy") {
    CHECK(std::abs(von_neumann_entropy(excited)) < 1e-15);
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == Approx(0.693147).epsilon(1e-6));
    CHECK(von_neumann_entropy(diag_rho({0.731059, 0.268941})) == Approx(0.582203).epsilon(1e-6));
}

TEST_CASE("relative entropy") {
    random::Engine rng(1);
    for (int k = 0; k < 20; ++k) {
        const auto rho = random::density(rng, 3);
        CHECK(std::abs(*relative_entropy(rho, rho)) < 1e-10);
    }
    const auto pi = gibbs_state(H01, 1.0).state;
    CHECK(*relative_entropy(excited, pi) == Approx(1.313262).epsilon(1e-6));
    CHECK_FALSE(relative_entropy(DensityMatrix::basis_state(2, 0), excited).has_value());
    // rho supported inside sigma's support stays finite
    CHECK(relative_entropy(excited, diag_rho({0.5, 0.5})).has_value());
}

TEST_CASE("Gibbs state") {
    const auto g = gibbs_state(H01, 1.0);
    CHECK(g.state.matrix()(0, 0).real() == Approx(0.731059).epsilon(1e-6));
    CHECK(g.state.matrix()(1, 1).real() == Approx(0.268941).epsilon(1e-6));
    CHECK(g.spec.Z == Approx(1.367879).epsilon(1e-6));

    const auto cold = gibbs_state(H01, 50.0);
    CHECK(max_abs_diff(cold.state.matrix(), DensityMatrix::basis_state(2, 0).matrix()) <= 1e-10);

    const auto warm = gibbs_state(H01, 0.1);
    CHECK(warm.state.matrix()(0, 0).real() == Approx(0.524979).epsilon(1e-6));
    CHECK(warm.state.matrix()(1, 1).real() == Approx(0.475021).epsilon(1e-6));

    random::Engine rng(4);
    const auto h = random::hermitian(rng, 4);
    const auto r = gibbs_state(h, 0.8);
    CHECK(std::abs(r.state.matrix().trace() - 1.0) <= 1e-12);
    CHECK(commutator(r.state.matrix(), h.matrix()).max_abs() <= 1e-10);

    CHECK_THROWS_AS(gibbs_state(H01, 0.0), ValidationError);
    // shifted log Z: no overflow for huge beta * E
    CHECK(std::isfinite(gibbs_spec(diag_h({-800.0, 0.0}), 1.0).log_Z));
}

TEST_CASE("passive state and ergotropy") {
    const auto pi = gibbs_state(H01, 1.0).state;
    CHECK(max_abs_diff(passive_state(pi, H01).matrix(), pi.matrix()) <= 1e-10);
    CHECK(max_abs_diff(passive_state(diag_rho({0.3, 0.7}), H01).matrix(), diag_rho({0.7, 0.3}).matrix()) < 1e-15);

    CHECK(std::abs(ergotropy(pi, H01)) <= 1e-10);
    CHECK(ergotropy(diag_rho({0.3, 0.7}), H01) == Approx(0.4).epsilon(1e-12));
    CHECK(ergotropy(testing::plus_state(), H01) == Approx(0.5).epsilon(1e-12));

    random::Engine rng(12);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + k % 4;
        const auto rho = random::density(rng, n);
        const auto h = random::hermitian(rng, n);
        const double w = ergotropy(rho, h);
        REQUIRE(w >= -1e-12);
        REQUIRE(std::abs(energy(passive_state(rho, h), h) - testing::brute_force_passive_energy(rho, h)) <= 1e-10);
        // covariance under a joint unitary rotation
        const auto u = random::unitary(rng, n);
        const DensityMatrix rr(u * rho.matrix() * u.adjoint());
        const HermitianOperator hh(u * h.matrix() * u.adjoint());
        REQUIRE(std::abs(ergotropy(rr, hh) - w) <= 1e-10);
    }
}

TEST_CASE("passive state with degenerate levels") {
    const auto h = diag_h({0.0, 1.0, 1.0});
    random::Engine rng(8);
    const auto rho = random::density(rng, 3);
    CHECK(energy(passive_state(rho, h), h) == Approx(testing::brute_force_passive_energy(rho, h)).epsilon(1e-12));
}

TEST_CASE("free energy and extractable work") {
    CHECK(free_energy(excited, H01, 1.0) == Approx(1.0).epsilon(1e-14));
    CHECK(free_energy(excited, H01, 0.3) == Approx(1.0).epsilon(1e-14));
    CHECK(free_energy(gibbs_state(H01, 1.0).state, H01, 1.0) == Approx(-0.313262).epsilon(1e-6));
    CHECK(free_energy(DensityMatrix::maximally_mixed(2), H01, 1.0) == Approx(-0.193147).epsilon(1e-6));

    CHECK(std::abs(extractable_work(gibbs_state(H01, 0.4).state, H01, 0.4)) < 1e-12);
    CHECK(extractable_work(excited, H01, 1.0) == Approx(1.313262).epsilon(1e-6));

    const auto mixed = DensityMatrix::maximally_mixed(2);
    const double direct = *relative_entropy(mixed, gibbs_state(H01, 0.1).state) / 0.1;
    CHECK(std::abs(extractable_work(mixed, H01, 0.1) - direct) <= 1e-10);
    CHECK(direct == Approx(0.0124947951).epsilon(1e-8));
}

TEST_CASE("entropy changes and heat") {
    const auto pi = gibbs_state(H01, 1.0).state;
    CHECK(delta_S_ir(excited, H01, excited, H01, 1.0) == 0.0);
    CHECK(delta_S_ir(excited, H01, pi, H01, 1.0) == Approx(1.313262).epsilon(1e-6));

    const auto h2 = diag_h({0.0, 2.0});
    const auto pi2 = gibbs_state(h2, 1.0).state;
    CHECK(std::abs(delta_S_r(pi, H01, pi2, h2, 1.0)) < 1e-14);
    CHECK(std::abs(heat(pi, H01, pi2, h2, 1.0)) < 1e-14);

    CHECK(delta_S_r(pi, H01, excited, H01, 1.0) == Approx(-0.731059).epsilon(1e-6));
    CHECK(heat(pi, H01, excited, H01, 1.0) == Approx(0.731059).epsilon(1e-6));
}

TEST_CASE("contractivity under detailed-balance amplitude damping") {
    random::Engine rng(21);
    const double beta = 0.7;
    const auto pi = gibbs_state(H01, beta).state;
    const double eta = pi.matrix()(0, 0).real();
    for (int k = 0; k < 100; ++k) {
        const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const QuantumChannel gad({
            ComplexMatrix(2, {std::sqrt(eta), 0.0, 0.0, std::sqrt(eta * (1 - p))}),
            ComplexMatrix(2, {0.0, std::sqrt(eta * p), 0.0, 0.0}),
            ComplexMatrix(2, {std::sqrt((1 - eta) * (1 - p)), 0.0, 0.0, std::sqrt(1 - eta)}),
            ComplexMatrix(2, {0.0, 0.0, std::sqrt((1 - eta) * p), 0.0}),
        });
        REQUIRE(max_abs_diff(apply_channel(pi, gad).matrix(), pi.matrix()) < 1e-14);
        const auto rho0 = random::density(rng, 2);
        REQUIRE(delta_S_ir(rho0, H01, apply_channel(rho0, gad), H01, beta) >= -1e-10);
    }
}

TEST_CASE("adiabatic work and operational heat") {
    CHECK(adiabatic_work_gibbs(H01, H01, 1.0) == 0.0);
    CHECK(adiabatic_work_gibbs(H01, diag_h({0.0, 2.0}), 1.0) == Approx(-0.030536).epsilon(1e-6));
    CHECK(adiabatic_work_gibbs(H01, diag_h({0.0, 2.0}), 0.1) == Approx(0.4253111929).epsilon(1e-9));

    random::Engine rng(6);
    const auto r = random::density(rng, 2);
    CHECK(adiabatic_work_passive(r, H01, H01) == 0.0);
    CHECK(adiabatic_work_passive(diag_rho({0.3, 0.7}), H01, diag_h({0.0, 2.0})) == Approx(0.3).epsilon(1e-12));

    const auto h = random::hermitian(rng, 3), h2 = random::hermitian(rng, 3);
    const auto rho = random::density(rng, 3);
    const auto u = random::unitary(rng, 3);
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(adiabatic_work_passive(rho, h, h2) - adiabatic_work_passive(rotated, h, h2)) <= 1e-10);

    CHECK(operational_heat(r, r, H01) == 0.0);
    CHECK(operational_heat(excited, DensityMatrix::maximally_mixed(2), H01) == Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(operational_heat(rho, rotated, h)) <= 1e-12);
}

TEST_CASE("ledger fixtures") {
    random::Engine rng(10);
    const auto rho = random::density(rng, 3);
    const auto h = random::hermitian(rng, 3);
    const auto id = first_law_ledger(rho, h, rho, h, 0.9);
    for (double v : {id.delta_E, id.delta_We, id.delta_Wf, id.adiabatic_work, id.adiabatic_work_gibbs,
                     id.operational_heat, id.heat, id.delta_S_rho, id.delta_S_gibbs, id.delta_S_ir, id.delta_S_r,
                     id.residual_first_law, id.residual_fundamental})
        CHECK(std::abs(v) < 1e-12);

    const auto pi = gibbs_state(H01, 1.0).state;
    const auto th = first_law_ledger(excited, H01, pi, H01, 1.0);
    CHECK(th.delta_Wf == Approx(-1.313262).epsilon(1e-6));
    CHECK(th.delta_E == Approx(-0.731059).epsilon(1e-6));
    // Q = dE - W_ad with W_ad = 0 at fixed H
    CHECK(th.heat == Approx(-0.731059).epsilon(1e-6));
    CHECK(std::abs(th.residual_first_law) <= 1e-9);
    CHECK(std::abs(th.residual_fundamental) <= 1e-9);
}

TEST_CASE("ledger identities on random processes") {
    random::Engine rng(2024);
    for (int k = 0; k < 2000; ++k) {
        const auto p = testing::random_process(rng);
        const auto l = first_law_ledger(p.rho0, p.h0, p.rhotau, p.htau, p.beta);
        REQUIRE(std::abs(l.residual_first_law) <= 1e-9);
        REQUIRE(std::abs(l.residual_fundamental) <= 1e-9);
        REQUIRE(std::abs(l.delta_S_rho - l.delta_S_gibbs - (l.delta_S_ir - l.delta_S_r)) <= 1e-10);
        REQUIRE(std::abs(l.heat - (l.delta_E - l.adiabatic_work_gibbs)) <= 1e-9);
        REQUIRE(std::abs(l.delta_Wf + l.delta_S_ir / p.beta) <= 1e-10);

        // delta_S_r closed form vs the log-of-Gibbs-state path
        const auto g0 = gibbs_state(p.h0, p.beta), gt = gibbs_state(p.htau, p.beta);
        const auto l0 = matrix_log_hermitian(HermitianOperator(g0.state.matrix())).matrix();
        const auto lt = matrix_log_hermitian(HermitianOperator(gt.state.matrix())).matrix();
        const double via_logs = trace_product(p.rhotau.matrix() - gt.state.matrix(), lt).real() -
                                trace_product(p.rho0.matrix() - g0.state.matrix(), l0).real();
        REQUIRE(std::abs(l.delta_S_r - via_logs) <= 1e-10);

        for (const auto* r : {&p.rho0, &p.rhotau}) {
            const auto& h = r == &p.rho0 ? p.h0 : p.htau;
            const double wf = extractable_work(*r, h, p.beta);
            REQUIRE(std::abs(wf - *relative_entropy(*r, gibbs_state(h, p.beta).state) / p.beta) <= 1e-10);
        }
    }
}
