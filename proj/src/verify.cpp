#include "lindblad/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>

#include "lindblad/bounds.hpp"
#include "lindblad/csv.hpp"
#include "lindblad/dynamics.hpp"
#include "lindblad/liouville.hpp"
#include "lindblad/model.hpp"
#include "lindblad/parallel.hpp"
#include "lindblad/rng.hpp"
#include "lindblad/scenarios.hpp"

namespace lindblad::verify {

namespace {

constexpr std::uint64_t kVerifySeed = 0x5EEDBA5EULL;

Matrix random_matrix(rng::Stream& stream, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = stream.complex_gaussian();
    return m;
}

Matrix random_scaled_operator(rng::Stream& stream, std::size_t n) {
    Matrix m = random_matrix(stream, n);
    const double scale = stream.uniform(0.3, 1.2) / frobenius_norm(m);
    return scale * m;
}

Matrix random_normal_scaled(rng::Stream& stream, std::size_t n) {
    const Matrix u = random_unitary(stream, n);
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = stream.complex_gaussian();
    Matrix m = u * d * u.adjoint();
    const double scale = stream.uniform(0.3, 1.2) / frobenius_norm(m);
    return scale * m;
}

DensityMatrix random_density(rng::Stream& stream, std::size_t n) {
    const Matrix g = random_matrix(stream, n);
    Matrix rho = g * g.adjoint();
    rho = (1.0 / rho.trace().real()) * rho;
    return validate_density(hermitize(rho));
}

LindbladModel random_model(rng::Stream& stream, std::size_t n, bool normal_channels,
                           bool with_hamiltonian) {
    std::vector<OperatorTerm> hams;
    if (with_hamiltonian) {
        hams.push_back({hermitize(random_matrix(stream, n)), -1});
    }
    const std::size_t channels = 1 + (stream.next_u64() % 2);
    std::vector<OperatorTerm> linds;
    for (std::size_t k = 0; k < channels; ++k) {
        linds.push_back({normal_channels ? random_normal_scaled(stream, n)
                                         : random_scaled_operator(stream, n),
                         -1});
    }
    return LindbladModel(n, std::move(hams), std::move(linds));
}

struct Tally {
    std::atomic<std::size_t> failures{0};
    std::atomic<double> worst{0.0};

    void update(bool ok, double measure) {
        if (!ok) failures.fetch_add(1);
        double prev = worst.load();
        while (measure > prev && !worst.compare_exchange_weak(prev, measure)) {
        }
    }
};

CheckResult tally_result(const std::string& name, const Tally& tally,
                         const std::string& measure_label) {
    CheckResult r;
    r.name = name;
    r.passed = tally.failures.load() == 0;
    std::ostringstream detail;
    detail << measure_label << "=" << tally.worst.load();
    if (!r.passed) detail << ", failures=" << tally.failures.load();
    r.detail = detail.str();
    return r;
}

// ---- linalg ----------------------------------------------------------

CheckResult check_norm_ordering(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x01, i);
        const std::size_t n = 2 + (stream.next_u64() % 5);
        const Matrix m = random_matrix(stream, n);
        const double sp = spectral_norm(m);
        const double fr = frobenius_norm(m);
        tally.update(sp <= fr + 1e-12, sp - fr);
    });
    return tally_result("linalg.norm_ordering", tally, "max(spectral-frobenius)");
}

CheckResult check_eig_reconstruction(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x02, i);
        const std::size_t n = 2 + (stream.next_u64() % 7);
        const Matrix m = hermitize(random_matrix(stream, n));
        const EigenSystem sys = hermitian_eigensystem(m);
        Matrix lambda(n, n);
        for (std::size_t k = 0; k < n; ++k) lambda(k, k) = sys.eigenvalues[k];
        const Matrix rebuilt = sys.vectors * lambda * sys.vectors.adjoint();
        const double rel = frobenius_norm(rebuilt - m) / std::max(frobenius_norm(m), 1e-300);
        tally.update(rel <= 1e-8, rel);
    });
    return tally_result("linalg.eig_reconstruction", tally, "max_rel_error");
}

CheckResult check_unitary_invariance(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x03, i);
        const std::size_t n = 2 + (stream.next_u64() % 4);
        const Matrix m = random_matrix(stream, n);
        const Matrix u = random_unitary(stream, n);
        const Matrix v = random_unitary(stream, n);
        const double base = spectral_norm(m);
        const double rotated = spectral_norm(u * m * v);
        tally.update(std::abs(base - rotated) <= 1e-9, std::abs(base - rotated));
    });
    return tally_result("linalg.spectral_norm_unitary_invariance", tally, "max_abs_diff");
}

// ---- model -----------------------------------------------------------

CheckResult check_generator_hermitian_traceless(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x04, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, false, true);
        const DensityMatrix rho = random_density(stream, n);
        const Matrix d = apply_lindbladian(model, rho, 0.0);
        const double herm = hermiticity_defect(d);
        const double tr = std::abs(d.trace());
        tally.update(herm <= 1e-12 && tr <= 1e-12, std::max(herm, tr));
    });
    return tally_result("model.generator_hermitian_traceless", tally, "max_defect");
}

CheckResult check_dephasing_purity_rate(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x05, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, true, true);
        const DensityMatrix rho = random_density(stream, n);
        const Matrix d = apply_lindbladian(model, rho, 0.0);
        const double rate = 2.0 * (rho.matrix() * d).trace().real();
        tally.update(rate <= 1e-12, rate);
    });
    return tally_result("model.dephasing_purity_nonincreasing", tally, "max_rate");
}

CheckResult check_traceless_shift_skew(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x06, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const Matrix a = random_scaled_operator(stream, n);
        const cplx c = stream.complex_gaussian();
        Matrix shifted = a;
        for (std::size_t k = 0; k < n; ++k) shifted(k, k) += c;
        const LindbladModel base(n, {}, {{a, -1}});
        const LindbladModel moved(n, {}, {{shifted, -1}});
        const Matrix diff = skew_part(build_superoperator(base, 0.0)).matrix -
                            skew_part(build_superoperator(moved, 0.0)).matrix;
        double worst = 0.0;
        for (const cplx& e : diff.entries()) worst = std::max(worst, std::abs(e));
        tally.update(worst <= 1e-12, worst);
    });
    return tally_result("model.traceless_shift_skew_invariance", tally, "max_entry_diff");
}

// ---- liouville -------------------------------------------------------

CheckResult check_superop_oracle(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x07, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, false, true);
        const DensityMatrix rho = random_density(stream, n);
        const Superoperator sop = build_superoperator(model, 0.0);
        const std::vector<cplx> lhs = vectorize(apply_lindbladian(model, rho, 0.0));
        std::vector<cplx> rhs = matvec(sop.generator, vectorize(rho).amplitudes);
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] -= lhs[k];
        const double rel = vector_norm(rhs) / std::max(frobenius_norm(sop.generator), 1e-300);
        tally.update(rel < 1e-10, rel);
    });
    return tally_result("liouville.superoperator_oracle", tally, "max_rel_residual");
}

CheckResult check_hamiltonian_independence(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x08, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const Matrix a = random_scaled_operator(stream, n);
        const Matrix h = hermitize(random_matrix(stream, n));
        const LindbladModel bare(n, {}, {{a, -1}});
        const LindbladModel dressed(n, {{h, -1}, {3.7 * h, -1}}, {{a, -1}});
        const Matrix diff = skew_part(build_superoperator(bare, 0.0)).matrix -
                            skew_part(build_superoperator(dressed, 0.0)).matrix;
        double worst = 0.0;
        for (const cplx& e : diff.entries()) worst = std::max(worst, std::abs(e));
        tally.update(worst <= 1e-12, worst);
    });
    return tally_result("liouville.skew_hamiltonian_independence", tally, "max_entry_diff");
}

CheckResult check_rate_identity() {
    // Dephasing channel from a coherent state: d(ln P)/dt by central
    // differences against the instantaneous Liouville-space expression.
    const LindbladModel model(2, {{ops::sigma_x(), -1}}, {{ops::sigma_z(), -1}});
    const Matrix rho0 = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    const TimeGrid grid{0.0, 0.5, 1e-4, 1};
    const Trajectory traj = integrate(model, validate_density(rho0), grid);
    const SkewPart sk = skew_part(build_superoperator(model, 0.0));

    double worst = 0.0;
    for (std::size_t s = 100; s + 100 < traj.times.size(); s += 50) {
        const double h = traj.times[s + 1] - traj.times[s];
        const double fd =
            (std::log(traj.observables[s + 1].purity) - std::log(traj.observables[s - 1].purity)) /
            (2.0 * h);
        const std::vector<cplx> r = vectorize(traj.states[s]).amplitudes;
        const cplx num = inner(r, matvec(sk.matrix, r));
        const double formula = (cplx(0.0, -1.0) * num).real() / traj.observables[s].purity;
        const double rel = std::abs(fd - formula) / std::max(std::abs(formula), 1e-12);
        worst = std::max(worst, rel);
    }
    CheckResult r;
    r.name = "liouville.instantaneous_rate_identity";
    r.passed = worst <= 1e-4;
    std::ostringstream detail;
    detail << "max_rel_error=" << worst;
    r.detail = detail.str();
    return r;
}

CheckResult check_speed_limit_eq9(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x09, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, false, true);
        const DensityMatrix rho = random_density(stream, n);
        const SkewPart sk = skew_part(build_superoperator(model, 0.0));
        const std::vector<cplx> r = vectorize(rho).amplitudes;
        const double num = std::abs((cplx(0.0, -1.0) * inner(r, matvec(sk.matrix, r))).real());
        const double lhs = num / purity(rho.matrix());
        const double rhs = skew_spectral_norm(sk);
        tally.update(lhs <= rhs + 1e-10, lhs - rhs);
    });
    return tally_result("liouville.speed_limit_eq9", tally, "max_excess");
}

CheckResult check_dephasing_eig_multiset(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x0A, i);
        const std::size_t n = 2 + (stream.next_u64() % 5);
        const Matrix a = random_normal_scaled(stream, n);
        const LindbladModel model(n, {}, {{a, -1}});
        const SkewPart sk = skew_part(build_superoperator(model, 0.0));

        const NormalEigenSystem sys = normal_eigensystem(a);
        std::vector<double> expected;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                expected.push_back(-std::norm(sys.eigenvalues[p] - sys.eigenvalues[q]));
        std::sort(expected.begin(), expected.end());

        double worst = 0.0;
        for (std::size_t k = 0; k < expected.size(); ++k) {
            worst = std::max(worst, std::abs(expected[k] - sk.spectrum.eigenvalues[k]));
        }
        tally.update(worst <= 1e-9, worst);
    });
    return tally_result("liouville.dephasing_eig_multiset", tally, "max_abs_diff");
}

// ---- dynamics --------------------------------------------------------

CheckResult check_rk4_order() {
    const LindbladModel model(2, {{ops::sigma_x(), -1}}, {{ops::sigma_z(), -1}});
    const Matrix rho0 = Matrix::from_rows({{0.7, 0.25}, {0.25, 0.3}});
    const DensityMatrix start = validate_density(rho0);

    auto end_state = [&](double dt) {
        const TimeGrid grid{0.0, 1.0, dt, 1000000};
        return integrate(model, start, grid).states.back().matrix();
    };
    const Matrix reference = end_state(1.0 / 4096.0);
    const double err_coarse = frobenius_norm(end_state(1.0 / 128.0) - reference);
    const double err_fine = frobenius_norm(end_state(1.0 / 256.0) - reference);

    CheckResult r;
    r.name = "dynamics.rk4_order";
    r.passed = err_fine > 0.0 && err_coarse / err_fine >= 8.0;
    std::ostringstream detail;
    detail << "error_ratio=" << (err_fine > 0.0 ? err_coarse / err_fine : 0.0);
    r.detail = detail.str();
    return r;
}

CheckResult check_lsa_monotonic(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x0B, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, true, true);
        const DensityMatrix rho = random_density(stream, n);
        const TimeGrid grid{0.0, 0.3, 2e-3, 1};
        const Trajectory traj = integrate(model, rho, grid);
        double worst = 0.0;
        for (std::size_t s = 1; s < traj.times.size(); ++s) {
            worst = std::max(worst, traj.observables[s].purity - traj.observables[s - 1].purity);
        }
        tally.update(worst <= 1e-9, worst);
    });
    return tally_result("dynamics.lsa_purity_monotonic", tally, "max_increase");
}

CheckResult check_jensen(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x0C, i);
        const std::size_t n = 2 + (stream.next_u64() % 7);
        const DensityMatrix rho = random_density(stream, n);
        const double s = vn_entropy(rho);
        const double renyi = -std::log(purity(rho.matrix()));
        tally.update(s >= renyi - 1e-9, renyi - s);
    });
    return tally_result("dynamics.jensen_entropy_bound", tally, "max_excess");
}

CheckResult check_deviation_tightness() {
    double worst = 0.0;
    for (const double a : {0.5, 1.0, 2.0}) {
        const LindbladModel model(2, {}, {{a * ops::sigma_z(), -1}});
        const Matrix rho0 = Matrix::from_rows({{0.7, cplx(0.2, 0.1)}, {cplx(0.2, -0.1), 0.3}});
        const DensityMatrix start = validate_density(rho0);
        const SteadyState ss = steady_state(model, start, SteadyStrategy::dephased_diagonal);
        const TimeGrid grid{0.0, 5.0, 1e-3, 100};
        const Trajectory traj = integrate(model, start, grid, &ss.rho_s);
        const double pd0 = traj.observables.front().purity_deviation;
        for (std::size_t s = 1; s < traj.times.size(); ++s) {
            const double expected = 4.0 * a * a * traj.times[s];
            const double measured = std::log(pd0 / traj.observables[s].purity_deviation);
            worst = std::max(worst, std::abs(measured - expected) / expected);
        }
    }
    CheckResult r;
    r.name = "dynamics.deviation_decay_tightness";
    r.passed = worst <= 1e-5;
    std::ostringstream detail;
    detail << "max_rel_error=" << worst;
    r.detail = detail.str();
    return r;
}

// ---- bounds ----------------------------------------------------------

CheckResult check_action_bound(std::size_t count, RateKind kind, bool normal_channels,
                               const std::string& name) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ (kind == RateKind::hilbert ? 0x0D : 0x0E), i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, normal_channels, true);
        const DensityMatrix rho = random_density(stream, n);
        const TimeGrid grid{0.0, 0.4, 1e-3, 40};
        const Trajectory traj = integrate(model, rho, grid);
        const double action = bound_action(model, grid, kind);
        const double delta = std::abs(std::log(traj.observables.back().purity /
                                               traj.observables.front().purity));
        tally.update(delta <= action + 1e-6, delta - action);

        if (kind == RateKind::liouville) {
            const double rate = liouville_rate(model, 0.0);
            for (std::size_t s = 0; s < traj.times.size(); ++s) {
                const Matrix d = apply_lindbladian(model, traj.states[s], traj.times[s]);
                const double inst =
                    std::abs(2.0 * (traj.states[s].matrix() * d).trace().real()) /
                    traj.observables[s].purity;
                tally.update(inst <= rate + 1e-9, inst - rate);
            }
        }
    });
    return tally_result(name, tally, "max_excess");
}

CheckResult check_eq11_any_solution(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x0F, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, false, true);
        const DensityMatrix rho_a = random_density(stream, n);
        const DensityMatrix rho_b = random_density(stream, n);
        const TimeGrid grid{0.0, 0.4, 1e-3, 400};
        const Trajectory ta = integrate(model, rho_a, grid);
        const Trajectory tb = integrate(model, rho_b, grid);
        const double action = bound_action(model, grid, RateKind::liouville);
        const double pd0 = purity_deviation(ta.states.front().matrix(), tb.states.front().matrix());
        const double pd1 = purity_deviation(ta.states.back().matrix(), tb.states.back().matrix());
        if (pd0 > 1e-12 && pd1 > 1e-300) {
            const double delta = std::abs(std::log(pd1 / pd0));
            tally.update(delta <= action + 1e-6, delta - action);
        }
    });
    return tally_result("bounds.eq11_deviation_any_solution", tally, "max_excess");
}

CheckResult check_dephasing_ordering(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x10, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const LindbladModel model = random_model(stream, n, true, false);
        const double p0 = stream.uniform(1.0 / static_cast<double>(n), 1.0);
        const TimeGrid grid{0.0, stream.uniform(0.1, 2.0), 1e-2, 1};
        const double action_h = bound_action(model, grid, RateKind::hilbert);
        const double action_l = bound_action(model, grid, RateKind::liouville);
        const double floor = dephasing_floor(model, p0, action_l);
        const PurityEnvelopes env = purity_envelopes(p0, action_h, action_l, n);
        const bool ok = floor >= env.liouville.lower - 1e-12 &&
                        env.liouville.lower >= env.hilbert.lower - 1e-12;
        tally.update(ok, std::max(env.liouville.lower - floor, env.hilbert.lower - env.liouville.lower));
    });
    return tally_result("bounds.dephasing_floor_ordering", tally, "max_violation");
}

CheckResult check_appendix_multichannel(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x11, i);
        const std::size_t n = 2 + (stream.next_u64() % 7);
        const std::size_t channels = 1 + (stream.next_u64() % 3);
        std::vector<OperatorTerm> terms;
        double sum_rates = 0.0;
        double sum_hilbert = 0.0;
        for (std::size_t k = 0; k < channels; ++k) {
            const Matrix a = random_normal_scaled(stream, n);
            const LindbladModel single(n, {}, {{a, -1}});
            sum_rates += liouville_rate(single, 0.0);
            sum_hilbert += 4.0 * frobenius_norm_sq(a);
            terms.push_back({a, -1});
        }
        const LindbladModel model(n, {}, std::move(terms));
        const double combined = liouville_rate(model, 0.0);
        const bool ok = combined <= sum_rates + 1e-9 && sum_rates <= sum_hilbert + 1e-9;
        tally.update(ok, std::max(combined - sum_rates, sum_rates - sum_hilbert));
    });
    return tally_result("bounds.appendix_multichannel", tally, "max_violation");
}

CheckResult check_cooling_bound(std::size_t count) {
    const LindbladModel model(2, {}, {{ops::sigma_minus(), -1}});
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x12, i);
        const DensityMatrix rho = random_density(stream, 2);
        const TimeGrid grid{0.0, 2.0, 1e-3, 200};
        const Trajectory traj = integrate(model, rho, grid);
        const double floor = entropy_floor(traj.observables.front().purity, model, grid);
        const double s_final = traj.observables.back().vn_entropy;
        tally.update(s_final >= floor - 1e-6, floor - s_final);
    });
    return tally_result("bounds.cooling_entropy_floor", tally, "max_violation");
}

CheckResult check_m_scaling() {
    const Matrix a = ops::sigma_z();
    const LindbladModel single(2, {}, {{a, -1}});
    const double f2 = frobenius_norm_sq(a);
    const double single_liouville = liouville_rate(single, 0.0);

    double worst = 0.0;
    bool ok = true;
    for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
        const LindbladModel multi = compose_independent(single, m);
        const double expected_h =
            static_cast<double>(m) * std::pow(2.0, static_cast<double>(m - 1)) * 4.0 * f2;
        const double got_h = hilbert_rate(multi, 0.0);
        if (got_h != expected_h) ok = false;
        const double got_l = liouville_rate(multi, 0.0);
        const double diff = std::abs(got_l - static_cast<double>(m) * single_liouville);
        worst = std::max(worst, diff);
        if (diff > 1e-9) ok = false;
    }
    CheckResult r;
    r.name = "bounds.m_scaling";
    r.passed = ok;
    std::ostringstream detail;
    detail << "max_liouville_diff=" << worst;
    r.detail = detail.str();
    return r;
}

// The Liouville-below-Hilbert ordering is only proven for normal channels;
// for general channels it is observed numerically, so this check reports the
// violation count instead of asserting.
CheckResult check_general_channel_ordering(std::size_t count) {
    std::atomic<std::size_t> violations{0};
    std::atomic<double> max_excess{-1e300};
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x15, i);
        const std::size_t n = 2 + (stream.next_u64() % 5);
        const std::size_t channels = 1 + (stream.next_u64() % 2);
        std::vector<OperatorTerm> terms;
        for (std::size_t k = 0; k < channels; ++k) {
            terms.push_back({random_scaled_operator(stream, n), -1});
        }
        const LindbladModel model(n, {}, std::move(terms));
        const double excess = liouville_rate(model, 0.0) - hilbert_rate(model, 0.0);
        double prev = max_excess.load();
        while (excess > prev && !max_excess.compare_exchange_weak(prev, excess)) {
        }
        if (excess > 1e-9) violations.fetch_add(1);
    });
    CheckResult r;
    r.name = "bounds.general_channel_ordering_observed";
    r.passed = true; // observational: reported, not asserted
    std::ostringstream detail;
    detail << "violations=" << violations.load() << "/" << count
           << ", max_excess=" << max_excess.load();
    r.detail = detail.str();
    return r;
}

CheckResult check_rate_h_invariance(std::size_t count) {
    Tally tally;
    parallel_for(count, [&](std::size_t i) {
        rng::Stream stream(kVerifySeed ^ 0x13, i);
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const Matrix a = random_scaled_operator(stream, n);
        const Matrix h = hermitize(random_matrix(stream, n));
        const LindbladModel bare(n, {}, {{a, -1}});
        const LindbladModel dressed(n, {{h, -1}}, {{a, -1}});
        const double diff_l = std::abs(liouville_rate(bare, 0.0) - liouville_rate(dressed, 0.0));
        const double diff_h = std::abs(hilbert_rate(bare, 0.0) - hilbert_rate(dressed, 0.0));
        tally.update(diff_l <= 1e-10 && diff_h == 0.0, std::max(diff_l, diff_h));
    });
    return tally_result("bounds.rates_hamiltonian_invariant", tally, "max_diff");
}

// ---- scenarios -------------------------------------------------------

CheckResult check_sampler_determinism() {
    const SamplerConfig cfg{SamplerKind::ginibre_density, 3, 1234};
    const auto a = sample_states(cfg, 5);
    const auto b = sample_states(cfg, 5);
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ea = a[i].matrix().entries();
        const auto& eb = b[i].matrix().entries();
        for (std::size_t k = 0; k < ea.size(); ++k) {
            if (ea[k] != eb[k]) ok = false;
        }
    }
    // Sample i must not depend on how many samples were drawn.
    const auto c = sample_states(cfg, 2);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].matrix().entries() != a[i].matrix().entries()) ok = false;
    }
    CheckResult r;
    r.name = "scenarios.sampler_determinism";
    r.passed = ok;
    r.detail = ok ? "byte-identical across repeats" : "streams diverged";
    return r;
}

CheckResult check_sampler_validity(std::size_t count_per_dim) {
    Tally tally;
    const std::size_t dims[] = {2, 3, 4, 8};
    parallel_for(4, [&](std::size_t d) {
        const SamplerConfig haar{SamplerKind::haar_pure, dims[d], 77};
        const SamplerConfig gin{SamplerKind::ginibre_density, dims[d], 78};
        // Ginibre samples run the full state validation on construction.
        for (const DensityMatrix& p : sample_states(haar, count_per_dim)) {
            const double err = std::abs(purity(p.matrix()) - 1.0);
            tally.update(err <= 1e-12, err);
        }
        for (const DensityMatrix& m : sample_states(gin, count_per_dim)) {
            tally.update(purity(m.matrix()) <= 1.0 + 1e-12, purity(m.matrix()) - 1.0);
        }
    });
    return tally_result("scenarios.sampler_validity", tally, "max_defect");
}

CheckResult check_fig1_floor(std::size_t trajectories) {
    ScenarioOptions opts;
    opts.trajectory_count = trajectories;
    const Scenario sc = builtin_scenario("fig1", opts);
    BoundRequest request;
    request.dephasing_floor = true;
    const BoundReport report = compute_bound_report(sc.model, sc.grid, 1.0, std::nullopt, request);

    Tally tally;
    parallel_for(sc.initial_states.size(), [&](std::size_t i) {
        const Trajectory traj = integrate(sc.model, sc.initial_states[i], sc.grid);
        double worst = 0.0;
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            worst = std::max(worst, report.dephasing_floor_series[s] - traj.observables[s].purity);
        }
        tally.update(worst <= 1e-8, worst);
    });
    return tally_result("scenarios.fig1_floor_containment", tally, "max_violation");
}

} // namespace

std::vector<CheckResult> run_all(bool quick) {
    const std::size_t big = quick ? 100 : 1000;
    const std::size_t mid = quick ? 50 : 500;
    const std::size_t small = quick ? 30 : 200;

    std::vector<CheckResult> results;
    results.push_back(check_norm_ordering(big));
    results.push_back(check_eig_reconstruction(small));
    results.push_back(check_unitary_invariance(small));
    results.push_back(check_generator_hermitian_traceless(big));
    results.push_back(check_dephasing_purity_rate(big));
    results.push_back(check_traceless_shift_skew(small));
    results.push_back(check_superop_oracle(big));
    results.push_back(check_hamiltonian_independence(small));
    results.push_back(check_rate_identity());
    results.push_back(check_speed_limit_eq9(big));
    results.push_back(check_dephasing_eig_multiset(small));
    results.push_back(check_rk4_order());
    results.push_back(check_lsa_monotonic(mid));
    results.push_back(check_jensen(big));
    results.push_back(check_deviation_tightness());
    results.push_back(check_action_bound(mid, RateKind::hilbert, false, "bounds.eq4_action"));
    results.push_back(check_action_bound(mid, RateKind::liouville, false, "bounds.eq10_action"));
    results.push_back(check_eq11_any_solution(quick ? 20 : 100));
    results.push_back(check_dephasing_ordering(mid));
    results.push_back(check_appendix_multichannel(mid));
    results.push_back(check_cooling_bound(quick ? 20 : 100));
    results.push_back(check_m_scaling());
    results.push_back(check_general_channel_ordering(mid));
    results.push_back(check_rate_h_invariance(small));
    results.push_back(check_sampler_determinism());
    results.push_back(check_sampler_validity(quick ? 50 : 2500));
    results.push_back(check_fig1_floor(quick ? 20 : 100));
    return results;
}

} // namespace lindblad::verify
