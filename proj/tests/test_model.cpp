#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lindblad/liouville.hpp"
#include "lindblad/model.hpp"
#include "lindblad/rng.hpp"
#include "lindblad/scenarios.hpp"

using namespace lindblad;

namespace {

Matrix random_matrix(rng::Stream& stream, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = stream.complex_gaussian();
    return m;
}

DensityMatrix random_density(rng::Stream& stream, std::size_t n) {
    const Matrix g = random_matrix(stream, n);
    Matrix rho = g * g.adjoint();
    rho = (1.0 / rho.trace().real()) * rho;
    return validate_density(hermitize(rho));
}

} // namespace

TEST_CASE("validate_density accepts physical states") {
    CHECK_NOTHROW(validate_density(0.5 * Matrix::identity(2)));

    // 2x2 closed-form eigenvalues via trace/determinant: a=0.7, b=0.3 gives
    // det = 0.21 - 0.09 = 0.12, lambda = (1 +- sqrt(1 - 0.48)) / 2.
    const Matrix m = Matrix::from_rows({{0.7, 0.3}, {0.3, 0.3}});
    const DensityMatrix rho = validate_density(m);
    const SpectralSummary spec = hermitian_eigs(rho.matrix());
    const double disc = std::sqrt(1.0 - 4.0 * 0.12);
    CHECK(spec.eigenvalues[0] == doctest::Approx((1.0 - disc) / 2.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[1] == doctest::Approx((1.0 + disc) / 2.0).epsilon(1e-12));
}

TEST_CASE("validate_density names the violated invariant") {
    const Matrix negative = Matrix::from_rows({{1.2, 0.0}, {0.0, -0.2}});
    CHECK_THROWS_AS(validate_density(negative), NotPositive);

    const Matrix off_trace = Matrix::from_rows({{0.6, 0.0}, {0.0, 0.6}});
    CHECK_THROWS_AS(validate_density(off_trace), TraceNotOne);

    const Matrix skewed = Matrix::from_rows({{0.5, 0.3}, {0.1, 0.5}});
    CHECK_THROWS_AS(validate_density(skewed), NotHermitian);

    CHECK_THROWS_AS(validate_density(Matrix(2, 3)), DimMismatch);
}

TEST_CASE("apply_lindbladian fixed cases") {
    const DensityMatrix mixed = validate_density(0.5 * Matrix::identity(2));

    // commuting steady state: H = sigma_z, no channels
    const LindbladModel unitary(2, {{ops::sigma_z(), -1}}, {});
    const Matrix zero = apply_lindbladian(unitary, mixed, 0.0);
    CHECK(frobenius_norm(zero) < 1e-15);

    // dephasing decay of the coherences, hand expansion of sigma_z rho sigma_z - rho
    const LindbladModel dephasing(2, {}, {{ops::sigma_z(), -1}});
    const DensityMatrix coherent =
        validate_density(Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    const Matrix d = apply_lindbladian(dephasing, coherent, 0.0);
    CHECK(std::abs(d(0, 0)) < 1e-15);
    CHECK(std::abs(d(1, 1)) < 1e-15);
    CHECK(std::abs(d(0, 1) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(d(1, 0) - cplx(-1.0, 0.0)) < 1e-15);

    // decay channel moves the excited population down, hand expansion
    const LindbladModel decay(2, {}, {{ops::sigma_minus(), -1}});
    const DensityMatrix excited = validate_density(Matrix::from_rows({{0.0, 0.0}, {0.0, 1.0}}));
    const Matrix dd = apply_lindbladian(decay, excited, 0.0);
    CHECK(std::abs(dd(0, 0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(dd(1, 1) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(dd(0, 1)) < 1e-15);
}

TEST_CASE("apply_lindbladian rejects mismatched inputs") {
    const LindbladModel model(2, {}, {{ops::sigma_z(), -1}});
    const DensityMatrix big = validate_density((1.0 / 3.0) * Matrix::identity(3));
    CHECK_THROWS_AS(apply_lindbladian(model, big, 0.0), DimMismatch);

    Schedule sched;
    sched.breakpoints = {0.0, 1.0};
    sched.segment_values = {{1.0}};
    const LindbladModel timed(2, {}, {{ops::sigma_z(), 0}}, sched);
    const DensityMatrix mixed = validate_density(0.5 * Matrix::identity(2));
    CHECK_THROWS_AS(apply_lindbladian(timed, mixed, 2.0), TimeOutOfRange);
    CHECK_NOTHROW(apply_lindbladian(timed, mixed, 1.0));
}

TEST_CASE("generator output is hermitian and traceless for random models") {
    rng::Stream stream(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + (stream.next_u64() % 3);
        std::vector<OperatorTerm> linds;
        for (std::size_t k = 0; k <= stream.next_u64() % 2; ++k) {
            linds.push_back({random_matrix(stream, n), -1});
        }
        const LindbladModel model(n, {{hermitize(random_matrix(stream, n)), -1}},
                                  std::move(linds));
        const Matrix d = apply_lindbladian(model, random_density(stream, n), 0.0);
        CHECK(hermiticity_defect(d) <= 1e-12);
        CHECK(std::abs(d.trace()) <= 1e-12);
    }
}

TEST_CASE("purity rate is nonpositive for dephasing channels") {
    rng::Stream stream(22);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const Matrix u = random_unitary(stream, n);
        Matrix diag(n, n);
        for (std::size_t k = 0; k < n; ++k) diag(k, k) = stream.complex_gaussian();
        const LindbladModel model(n, {}, {{u * diag * u.adjoint(), -1}});
        const DensityMatrix rho = random_density(stream, n);
        const double rate = 2.0 * (rho.matrix() * apply_lindbladian(model, rho, 0.0)).trace().real();
        CHECK(rate <= 1e-12);
    }
}

TEST_CASE("classify_channel implements the normality criterion") {
    const LindbladModel dephasing(2, {}, {{ops::sigma_z(), -1}});
    CHECK(classify_channel(dephasing).kind == ChannelClass::Kind::dephasing);
    CHECK(classify_channel(dephasing).per_operator_normality == std::vector<bool>{true});

    const LindbladModel decay(2, {}, {{ops::sigma_minus(), -1}});
    CHECK(classify_channel(decay).kind == ChannelClass::Kind::general);
    CHECK(classify_channel(decay).per_operator_normality == std::vector<bool>{false});

    rng::Stream stream(23);
    Matrix phases(3, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const double phi = stream.uniform(0.0, 6.283185307179586);
        phases(k, k) = cplx(std::cos(phi), std::sin(phi));
    }
    const LindbladModel diag(3, {}, {{phases, -1}});
    CHECK(classify_channel(diag).kind == ChannelClass::Kind::dephasing);

    const LindbladModel unitary(2, {{ops::sigma_x(), -1}}, {});
    CHECK(classify_channel(unitary).kind == ChannelClass::Kind::unitary);

    const LindbladModel zero_channel(2, {}, {{Matrix(2, 2), -1}});
    CHECK(classify_channel(zero_channel).kind == ChannelClass::Kind::unitary);

    const LindbladModel mixed(2, {}, {{ops::sigma_z(), -1}, {ops::sigma_minus(), -1}});
    CHECK(classify_channel(mixed).kind == ChannelClass::Kind::general);
}

TEST_CASE("traceless_shift") {
    const Matrix z = traceless_shift(ops::sigma_z());
    CHECK(frobenius_norm(z - ops::sigma_z()) == 0.0);

    const Matrix zero = traceless_shift(Matrix::identity(2));
    CHECK(frobenius_norm(zero) == 0.0);

    const Matrix shifted = traceless_shift(Matrix::from_rows({{2.0, 0.0}, {0.0, 0.0}}));
    CHECK(std::abs(shifted(0, 0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(shifted(1, 1) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(frobenius_norm(shifted) == doctest::Approx(std::sqrt(2.0)));

    // 1-D scan oracle: no scalar shift beats trace(a)/N.
    rng::Stream stream(24);
    const Matrix a = random_matrix(stream, 3);
    const double best = frobenius_norm(traceless_shift(a));
    const cplx center = a.trace() / 3.0;
    for (int i = -20; i <= 20; ++i) {
        for (int j = -20; j <= 20; ++j) {
            const cplx c = center + cplx(0.05 * i, 0.05 * j);
            Matrix probe = a;
            for (std::size_t k = 0; k < 3; ++k) probe(k, k) -= c;
            CHECK(frobenius_norm(probe) >= best - 1e-12);
        }
    }
}

TEST_CASE("scalar shifts of a channel leave the skew part unchanged") {
    rng::Stream stream(25);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + (stream.next_u64() % 3);
        const Matrix a = random_matrix(stream, n);
        const cplx c = stream.complex_gaussian();
        Matrix shifted = a;
        for (std::size_t k = 0; k < n; ++k) shifted(k, k) += c;

        const LindbladModel base(n, {}, {{a, -1}});
        const LindbladModel moved(n, {}, {{shifted, -1}});
        const Matrix diff = skew_part(build_superoperator(base, 0.0)).matrix -
                            skew_part(build_superoperator(moved, 0.0)).matrix;
        double worst = 0.0;
        for (const cplx& e : diff.entries()) worst = std::max(worst, std::abs(e));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("schedule lookup and validation") {
    Schedule sched;
    sched.breakpoints = {0.0, 1.0, 2.0};
    sched.segment_values = {{0.5}, {2.0}};
    CHECK(sched.segment_index(0.0) == 0);
    CHECK(sched.segment_index(0.999) == 0);
    CHECK(sched.segment_index(1.0) == 1); // right-continuous
    CHECK(sched.segment_index(2.0) == 1); // closed at the end
    CHECK_THROWS_AS(sched.segment_index(-0.1), TimeOutOfRange);
    CHECK_THROWS_AS(sched.segment_index(2.1), TimeOutOfRange);

    // noise amplitudes must be nonnegative for channel terms
    Schedule negative;
    negative.breakpoints = {0.0, 1.0};
    negative.segment_values = {{-0.5}};
    CHECK_THROWS_AS(LindbladModel(2, {}, {{ops::sigma_z(), 0}}, negative), ValidationError);
    // ... but are fine for Hamiltonian terms
    CHECK_NOTHROW(LindbladModel(2, {{ops::sigma_z(), 0}}, {}, negative));

    Schedule decreasing;
    decreasing.breakpoints = {0.0, 1.0, 1.0};
    decreasing.segment_values = {{1.0}, {1.0}};
    CHECK_THROWS_AS(LindbladModel(2, {}, {{ops::sigma_z(), 0}}, decreasing), ValidationError);

    CHECK_THROWS_AS(LindbladModel(2, {{ops::sigma_minus(), -1}}, {}), NotHermitian);
    CHECK_THROWS_AS(LindbladModel(2, {}, {{Matrix::identity(3), -1}}), DimMismatch);
    CHECK_THROWS_AS(LindbladModel(2, {}, {{ops::sigma_z(), 3}}), ValidationError);
}

TEST_CASE("scheduled coefficients scale the effective operators") {
    Schedule sched;
    sched.breakpoints = {0.0, 1.0, 2.0};
    sched.segment_values = {{0.5}, {2.0}};
    const LindbladModel model(2, {}, {{ops::sigma_z(), 0}}, sched);

    const auto early = model.lindblad_at(0.5);
    CHECK(frobenius_norm(early[0]) == doctest::Approx(0.5 * std::sqrt(2.0)));
    const auto late = model.lindblad_at(1.5);
    CHECK(frobenius_norm(late[0]) == doctest::Approx(2.0 * std::sqrt(2.0)));
}
