// acceptance.cpp: one PASS/FAIL line per acceptance criterion.
//
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "qthermo/audit.hpp"
#include "qthermo/dynamics.hpp"
#include "qthermo/measures.hpp"
#include "qthermo/models.hpp"
#include "support.hpp"

using namespace qthermo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        o.pass = false;
        o.detail += "; over runtime budget " + fmt("%.0f s", budget_s);
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s (%s; %.2f s)\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
}

// --- 1, 4 --------------------------------------------------------------------

Outcome identity_closures() {
    random::Engine rng(20240501);
    double eq2 = 0, eq7 = 0, split = 0, heat = 0, eq13 = 0, eq18 = 0;
    for (int k = 0; k < 10000; ++k) {
        const auto p = testing::random_process(rng);
        const auto l = thermo::first_law_ledger(p.rho0, p.h0, p.rhotau, p.htau, p.beta);
        eq2 = std::max(eq2, std::abs(l.residual_first_law));
        eq7 = std::max(eq7, std::abs(l.residual_fundamental));
        split = std::max(split, std::abs(l.delta_S_rho - l.delta_S_gibbs - (l.delta_S_ir - l.delta_S_r)));
        heat = std::max(heat, std::abs(l.heat - (l.delta_E - l.adiabatic_work_gibbs)));
        eq13 = std::max(eq13, std::abs(l.delta_Wf + l.delta_S_ir / p.beta));
        eq18 = std::max(eq18, std::abs(measures::work_split(p.rho0, p.h0, p.rhotau, p.htau, p.beta).residual));
    }
    const bool ok = eq2 <= 1e-9 && eq7 <= 1e-9 && split <= 1e-10 && heat <= 1e-9 && eq13 <= 1e-10 && eq18 <= 1e-9;
    std::ostringstream d;
    d << "10000 draws; max |first law| " << fmt("%.1e", eq2) << ", |fundamental eq| " << fmt("%.1e", eq7)
      << ", |entropy split| " << fmt("%.1e", split) << ", |heat| " << fmt("%.1e", heat) << ", |dWf + dS_ir/beta| "
      << fmt("%.1e", eq13) << ", |coherence split| " << fmt("%.1e", eq18);
    return {ok, d.str()};
}

Outcome free_energy_dual_path() {
    random::Engine rng(20240501);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const auto p = testing::random_process(rng);
        for (int end = 0; end < 2; ++end) {
            const auto& rho = end ? p.rhotau : p.rho0;
            const auto& h = end ? p.htau : p.h0;
            const auto rel = thermo::relative_entropy(rho, thermo::gibbs_state(h, p.beta).state);
            const double r = rel ? std::abs(thermo::extractable_work(rho, h, p.beta) - *rel / p.beta) : INFINITY;
            worst = std::max(worst, r);
        }
    }
    audit::Options o;
    o.count = 1000;
    for (const auto& c : audit::run(o).cases) worst = std::max(worst, c.free_energy_residual);
    return {worst <= 1e-10, "20000 ledger endpoints + 1000 audit cases; max |W_f - S(rho||pi)/beta| " + fmt("%.1e", worst)};
}

// --- 2 -----------------------------------------------------------------------

Outcome ergotropy_oracle() {
    random::Engine rng(99);
    double worst = 0.0, gibbs = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + k % 4;
        const auto rho = random::density(rng, n);
        const auto h = random::hermitian(rng, n);
        worst = std::max(worst, std::abs(thermo::ergotropy(rho, h) - testing::brute_force_ergotropy(rho, h)));
        const double beta = std::uniform_real_distribution<double>(0.05, 5.0)(rng);
        gibbs = std::max(gibbs, std::abs(thermo::ergotropy(thermo::gibbs_state(h, beta).state, h)));
    }
    return {worst <= 1e-10 && gibbs <= 1e-10,
            "1000 instances dim 2-5; max deviation from permutation minimum " + fmt("%.1e", worst) +
                ", max Gibbs ergotropy " + fmt("%.1e", gibbs)};
}

// --- 3 -----------------------------------------------------------------------

Outcome contractivity() {
    audit::Options o;
    o.count = 1000;
    const auto r = audit::run(o);
    double min_dsir = INFINITY;
    for (const auto& c : r.cases) min_dsir = std::min(min_dsir, c.delta_S_ir);
    o.expect_violation = true;
    o.count = 100;
    const auto v = audit::run(o);
    const bool ok = r.ok() && min_dsir >= -1e-10 && v.negative_entropy_cases >= 1;
    return {ok, "1000 Gibbs-preserving channels, min dS_ir " + fmt("%.2e", min_dsir) + ", failures " +
                    std::to_string(r.failing_seeds.size()) + "; non-Gibbs-preserving search found " +
                    std::to_string(v.negative_entropy_cases) + " negative cases (constructed case dS_ir " +
                    fmt("%.4f", v.cases[0].delta_S_ir) + ")"};
}

// --- 5 -----------------------------------------------------------------------

Outcome example1_oracle() {
    std::ostringstream d;
    bool ok = true;
    double calib_worst = 0.0;
    for (double R : {0.1, 0.3, 1.0, 5.0, 30.0}) {
        models::Example1Params p;
        p.R = R;
        p.steps = R >= 30.0 ? 100000 : 20000; // dt = 2e-4 for the stiff case
        const auto run = models::example1_pseudomode_oracle(p);
        calib_worst = std::max(calib_worst, run.calibration_error);
        double sup = 0.0;
        for (std::size_t k = 0; k < run.battery.states.size(); ++k) {
            const double a = std::norm(models::example1_amplitude(run.battery.times[k], p));
            sup = std::max(sup, std::abs(a - run.battery.states[k].matrix()(1, 1).real()));
        }
        ok = ok && sup <= 1e-3;
        d << "R=" << R << ": " << fmt("%.1e", sup) << "; ";
    }
    ok = ok && calib_worst <= models::pseudomode_calibration_tolerance;
    d << "single-qubit calibration " << fmt("%.1e", calib_worst);
    return {ok, "sup | |c1|^2 analytic - pseudomode | " + d.str()};
}

// --- 6 -----------------------------------------------------------------------

Outcome fig1_properties() {
    models::Example1Params p;
    p.R = 0.3;
    const auto slow = models::run_example1(p).series;
    const double rise = testing::max_rise(slow.P);
    std::size_t k_min = 0;
    for (std::size_t k = 0; k < slow.size(); ++k)
        if (slow.P[k] < slow.P[k_min]) k_min = k;

    p.R = 30.0;
    const auto fast = models::run_example1(p).series;
    const std::size_t changes = testing::sign_changes(fast.I);

    const bool monotone = rise <= 1e-9;
    const bool revivals = changes >= 3;
    std::ostringstream d;
    d << "R=0.3 P non-increasing: " << (monotone ? "yes" : "no") << " (max rise " << fmt("%.3e", rise)
      << ", P reaches its minimum " << fmt("%.4f", slow.P[k_min]) << " at t=" << fmt("%.3f", slow.t[k_min])
      << " and returns to " << fmt("%.4f", slow.P.back()) << " at t=20); R=30 I sign changes: " << changes;
    return {monotone && revivals, d.str()};
}

// --- 7 -----------------------------------------------------------------------

Outcome fig2_properties() {
    models::Example2Params p;
    const auto c1 = models::run_example2(p).series;
    const double period = 2.0 * M_PI / std::sqrt(p.detuning() * p.detuning() + 8.0 * p.g * p.g);
    std::vector<double> window;
    for (std::size_t k = 0; k < c1.size() && c1.t[k] <= 5.0 * period + 1e-9; ++k) window.push_back(c1.C_r[k]);
    const auto peaks = testing::local_maxima(window);
    double variation = INFINITY;
    if (peaks.size() >= 5) {
        const auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
        variation = (*hi - *lo) / *hi;
    }

    p.case_id = 2;
    const auto c2 = models::run_example2(p).series;
    const double late_cr = c2.C_r.back();

    p.beta = 1.0;
    const auto c2b = models::run_example2(p).series;
    const double late_p = std::abs(c2b.P.back()), late_pc = std::abs(c2b.P_c.back());
    double both_below = NAN;
    for (std::size_t k = 0; k < c2b.size(); ++k) {
        bool from_here = true;
        for (std::size_t j = k; j < c2b.size() && from_here; ++j)
            from_here = std::abs(c2b.P[j]) < 1e-3 && std::abs(c2b.P_c[j]) < 1e-3;
        if (from_here) {
            both_below = c2b.t[k];
            break;
        }
    }

    const bool ok = variation < 0.01 && late_cr < 1e-3 && late_p < 1e-3 && late_pc < 1e-3;
    std::ostringstream d;
    d << "case 1: " << peaks.size() << " peaks in 5 periods, variation " << fmt("%.1e", variation)
      << "; case 2: C_r(t=" << c2.t.back() << ") " << fmt("%.1e", late_cr) << "; beta=1: |P| " << fmt("%.1e", late_p)
      << ", |P_c| " << fmt("%.1e", late_pc) << ", both stay below 1e-3 from t=" << fmt("%.2f", both_below);
    return {ok, d.str()};
}

// --- 8 -----------------------------------------------------------------------

double rk4_error(double dt) {
    const dynamics::LindbladSpec spec{testing::diag_h({0.0, 1.0}), {{models::sigma_minus(), 1.0}}, {}};
    double err = 0.0;
    dynamics::lindblad_integrate(spec, DensityMatrix::basis_state(2, 1), {2.0, static_cast<std::size_t>(std::lround(2.0 / dt))},
                                 [&](std::size_t, double t, const ComplexMatrix& rho) {
                                     err = std::max(err, std::abs(rho(1, 1).real() - std::exp(-t)));
                                 });
    return err;
}

double fd_error(double dt) {
    const int n = static_cast<int>(std::lround(10.0 / dt));
    std::vector<double> s_ir;
    for (int k = 0; k <= n; ++k) s_ir.push_back(std::sin(k * dt));
    const auto d = measures::derivative(s_ir, dt);
    double e = 0.0;
    for (int k = 0; k <= n; ++k) e = std::max(e, std::abs(-d[k] + std::cos(k * dt))); // I = -dS_ir/dt
    return e;
}

Outcome numerics() {
    const double r1 = rk4_error(1e-2) / rk4_error(5e-3), r2 = rk4_error(5e-3) / rk4_error(2.5e-3);
    const double f1 = fd_error(1e-2) / fd_error(5e-3), f2 = fd_error(5e-3) / fd_error(2.5e-3);

    random::Engine rng(1234);
    double recon = 0.0, orth = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + k % 15;
        const auto h = random::hermitian(rng, n);
        const auto es = hermitian_eig(h);
        recon = std::max(recon, max_abs_diff(spectral_map(es, [](double x) { return cplx(x); }), h.matrix()));
        orth = std::max(orth, max_abs_diff(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(n)));
    }
    const bool ok = std::abs(r1 - 16) <= 4 && std::abs(r2 - 16) <= 4 && std::abs(f1 - 4) <= 0.5 &&
                    std::abs(f2 - 4) <= 0.5 && recon <= 1e-10 && orth <= 1e-10;
    std::ostringstream d;
    d << "RK4 ratios " << fmt("%.2f", r1) << ", " << fmt("%.2f", r2) << "; finite-difference ratios " << fmt("%.3f", f1)
      << ", " << fmt("%.3f", f2) << "; eigensolver reconstruction " << fmt("%.1e", recon) << ", orthonormality "
      << fmt("%.1e", orth) << " (1000 matrices, dim 2-16)";
    return {ok, d.str()};
}

// --- 9 -----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const auto dir = fs::temp_directory_path() / "qthermo_acceptance";
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs{
        {"example1 --R 30", "e1"},
        {"example2 --case 1", "e2"},
        {"audit --seed 7 --count 300", "audit"},
    };
    std::ostringstream d;
    bool ok = true;
    for (const auto& [args, tag] : runs) {
        std::string text[2];
        for (int rep = 0; rep < 2; ++rep) {
            const auto csv = dir / (tag + std::to_string(rep) + ".csv");
            fs::remove(csv);
            const std::string cmd = std::string(QTHERMO_CLI) + " " + args + " --out " + csv.string() + " > /dev/null";
            if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + args};
            text[rep] = slurp(csv);
        }
        const bool same = !text[0].empty() && text[0] == text[1];
        ok = ok && same;
        d << tag << " " << (same ? "identical" : "DIFFERENT") << " (" << text[0].size() << " bytes); ";
    }
    return {ok, d.str()};
}

} // namespace

int main() {
    criterion(1, "identity closures", 30, identity_closures);
    criterion(2, "ergotropy oracle", 0, ergotropy_oracle);
    criterion(3, "contractivity", 0, contractivity);
    criterion(4, "free-energy dual path", 0, free_energy_dual_path);
    criterion(5, "example 1 vs pseudomode oracle", 60, example1_oracle);
    criterion(6, "example 1 figure properties", 0, fig1_properties);
    criterion(7, "example 2 figure properties", 0, fig2_properties);
    criterion(8, "numerics", 30, numerics);
    criterion(9, "determinism", 0, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
