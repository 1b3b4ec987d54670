#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lindblad/bounds.hpp"
#include "lindblad/scenarios.hpp"

using namespace lindblad;

TEST_CASE("builtin scenario registry") {
    const Scenario fig1 = builtin_scenario("fig1");
    CHECK(fig1.initial_states.size() == 100);
    CHECK(hilbert_rate(fig1.model, 0.0) == 8.0);
    CHECK(liouville_rate(fig1.model, 0.0) == doctest::Approx(4.0).epsilon(1e-14));
    for (const DensityMatrix& rho : fig1.initial_states) {
        CHECK(std::abs(purity(rho.matrix()) - 1.0) <= 1e-12);
    }

    const Scenario fig2 = builtin_scenario("fig2");
    CHECK(purity(fig2.initial_states.front().matrix()) == doctest::Approx(0.5));
    CHECK(classify_channel(fig2.model).kind == ChannelClass::Kind::general);

    const Scenario tight = builtin_scenario("tightness");
    CHECK(liouville_rate(tight.model, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    const Scenario control = builtin_scenario("control");
    CHECK(liouville_rate(control.model, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(classify_channel(control.model).kind == ChannelClass::Kind::dephasing);

    CHECK_THROWS_AS(builtin_scenario("fig3"), UnknownScenario);
}

TEST_CASE("scenario options reshape the models") {
    ScenarioOptions opts;
    opts.dephasing_amplitude = 2.0;
    const Scenario tight = builtin_scenario("tightness", opts);
    CHECK(liouville_rate(tight.model, 0.0) == doctest::Approx(16.0).epsilon(1e-12));

    ScenarioOptions noisy;
    noisy.noise = {0.5, 1.0, 2.0};
    const Scenario control = builtin_scenario("control", noisy);
    CHECK(liouville_rate(control.model, 0.0) ==
          doctest::Approx(control_exact_rate(0.5, 1.0, 2.0)).epsilon(1e-12));

    ScenarioOptions bad;
    bad.tightness_coherence = 0.9; // not a state with population 0.7
    CHECK_THROWS_AS(builtin_scenario("tightness", bad), ValidationError);
}

TEST_CASE("samplers are deterministic and prefix-stable") {
    const SamplerConfig cfg{SamplerKind::ginibre_density, 3, 777};
    const auto a = sample_states(cfg, 6);
    const auto b = sample_states(cfg, 6);
    const auto prefix = sample_states(cfg, 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].matrix().entries() == b[i].matrix().entries());
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        CHECK(a[i].matrix().entries() == prefix[i].matrix().entries());
    }

    SamplerConfig other = cfg;
    other.seed = 778;
    const auto c = sample_states(other, 1);
    CHECK(c[0].matrix().entries() != a[0].matrix().entries());
}

TEST_CASE("sampler kinds produce the advertised objects") {
    const SamplerConfig haar{SamplerKind::haar_pure, 4, 10};
    for (const DensityMatrix& rho : sample_states(haar, 20)) {
        CHECK(std::abs(purity(rho.matrix()) - 1.0) <= 1e-12);
    }

    const SamplerConfig normal_cfg{SamplerKind::random_normal_operator, 4, 11};
    for (const Matrix& a : sample_operators(normal_cfg, 20)) {
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        CHECK(frobenius_norm(comm) < 1e-10);
    }

    const SamplerConfig ginibre_cfg{SamplerKind::ginibre_operator, 4, 12};
    const auto ops_list = sample_operators(ginibre_cfg, 3);
    CHECK(ops_list.size() == 3);

    CHECK_THROWS_AS(sample_states(ginibre_cfg, 1), ValidationError);
    CHECK_THROWS_AS(sample_operators(haar, 1), ValidationError);
    CHECK_THROWS_AS(sampler_kind_from_name("bogus"), SchemaError);
}

TEST_CASE("compose_independent scales the rates") {
    const LindbladModel single(2, {{ops::sigma_x(), -1}}, {{ops::sigma_z(), -1}});

    const LindbladModel two = compose_independent(single, 2);
    CHECK(two.dim() == 4);
    CHECK(two.hamiltonian_terms().size() == 2);
    CHECK(two.lindblad_terms().size() == 2);
    CHECK(hilbert_rate(two, 0.0) == 32.0); // M 2^{M-1} 4 ||A||^2, exactly
    CHECK(liouville_rate(two, 0.0) == doctest::Approx(8.0).epsilon(1e-12));

    const LindbladModel three = compose_independent(single, 3);
    CHECK(three.dim() == 8);
    CHECK(hilbert_rate(three, 0.0) == 96.0);
    CHECK(liouville_rate(three, 0.0) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("composed product states factorize the log-purity") {
    const LindbladModel single(2, {}, {{ops::sigma_z(), -1}});
    const LindbladModel two = compose_independent(single, 2);

    const Matrix rho1 = Matrix::from_rows({{0.5, 0.4}, {0.4, 0.5}});
    const DensityMatrix rho_single = validate_density(rho1);
    const DensityMatrix rho_pair = validate_density(hermitize(kron(rho1, rho1)));

    const TimeGrid grid{0.0, 1.0, 1e-3, 100};
    const Trajectory t1 = integrate(single, rho_single, grid);
    const Trajectory t2 = integrate(two, rho_pair, grid);
    for (std::size_t s = 0; s < t1.times.size(); ++s) {
        CHECK(std::abs(std::log(t2.observables[s].purity) -
                       2.0 * std::log(t1.observables[s].purity)) <= 1e-8);
    }
}

TEST_CASE("compose_independent guards") {
    const LindbladModel qutrit(3, {}, {{traceless_shift(Matrix::identity(3)), -1}});
    CHECK_THROWS_AS(compose_independent(qutrit, 4), DimTooLarge); // 81 > 64

    const LindbladModel qubit(2, {}, {{ops::sigma_z(), -1}});
    CHECK_THROWS_AS(compose_independent(qubit, 7), DimTooLarge); // 128 > 64
    CHECK_NOTHROW(compose_independent(qubit, 6));                // 64 is allowed
    CHECK_THROWS_AS(compose_independent(qubit, 1), ValidationError);

    Schedule sched;
    sched.breakpoints = {0.0, 1.0};
    sched.segment_values = {{1.0}};
    const LindbladModel timed(2, {}, {{ops::sigma_z(), 0}}, sched);
    CHECK_THROWS_AS(compose_independent(timed, 2), ValidationError);
}

TEST_CASE("fig1 trajectories stay above the dephasing floor") {
    ScenarioOptions opts;
    opts.trajectory_count = 10;
    const Scenario sc = builtin_scenario("fig1", opts);
    BoundRequest request;
    request.dephasing_floor = true;
    const BoundReport report = compute_bound_report(sc.model, sc.grid, 1.0, std::nullopt, request);

    for (const DensityMatrix& rho0 : sc.initial_states) {
        const Trajectory traj = integrate(sc.model, rho0, sc.grid);
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            CHECK(traj.observables[s].purity >= report.dephasing_floor_series[s] - 1e-8);
        }
    }
}
