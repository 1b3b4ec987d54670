#include "lindblad/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lindblad {

namespace {

constexpr double kTraceDriftTol = 1e-7;
constexpr double kRecordHermTol = 1e-8;
constexpr double kPurityPad = 1e-9;
constexpr double kClusterTol = 1e-8;

void validate_grid(const TimeGrid& grid) {
    if (!(grid.t_end > grid.t_start)) {
        throw ValidationError("grid: t_end must exceed t_start");
    }
    if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
        throw ValidationError("grid: dt must be positive and finite");
    }
    if ((grid.t_end - grid.t_start) / grid.dt < 1.0 - 1e-12) {
        throw ValidationError("grid: dt exceeds the integration window");
    }
    if (grid.sample_stride == 0) {
        throw ValidationError("grid: sample_stride must be positive");
    }
}

// Effective operators of one schedule segment, with the adjoint products
// hoisted out of the RK4 stages.
struct SegmentOps {
    Matrix hamiltonian; // empty when the model has no Hamiltonian terms
    std::vector<Matrix> channels;
    std::vector<Matrix> channel_adjoints;
    std::vector<Matrix> grams; // A^dag A

    Matrix derivative(const Matrix& x) const {
        Matrix out(x.rows(), x.cols());
        if (!hamiltonian.empty()) {
            out += cplx(0.0, -1.0) * (hamiltonian * x - x * hamiltonian);
        }
        for (std::size_t k = 0; k < channels.size(); ++k) {
            out += channels[k] * x * channel_adjoints[k];
            out -= 0.5 * (grams[k] * x + x * grams[k]);
        }
        return out;
    }
};

SegmentOps make_segment_ops(const LindbladModel& model, std::size_t schedule_segment) {
    SegmentOps ops;
    if (!model.hamiltonian_terms().empty()) {
        Matrix h(model.dim(), model.dim());
        for (const auto& term : model.hamiltonian_terms()) {
            h += model.coefficient_in_segment(term.coeff_index, schedule_segment) * term.op;
        }
        ops.hamiltonian = std::move(h);
    }
    auto effective = model.lindblad_in_segment(schedule_segment);
    for (Matrix& a : effective) {
        ops.channel_adjoints.push_back(a.adjoint());
        ops.grams.push_back(ops.channel_adjoints.back() * a);
        ops.channels.push_back(std::move(a));
    }
    return ops;
}

} // namespace

StepPlan build_step_plan(const LindbladModel& model, const TimeGrid& grid) {
    validate_grid(grid);
    model.require_in_domain(grid.t_start, grid.t_end);

    std::vector<double> boundaries{grid.t_start};
    if (model.schedule()) {
        for (double b : model.schedule()->breakpoints) {
            if (b > grid.t_start && b < grid.t_end) boundaries.push_back(b);
        }
    }
    boundaries.push_back(grid.t_end);

    StepPlan plan;
    for (std::size_t s = 0; s + 1 < boundaries.size(); ++s) {
        const double len = boundaries[s + 1] - boundaries[s];
        const auto steps = static_cast<std::size_t>(std::ceil(len / grid.dt - 1e-12));
        StepPlan::Segment seg;
        seg.t_start = boundaries[s];
        seg.steps = std::max<std::size_t>(1, steps);
        seg.dt = len / static_cast<double>(seg.steps);
        seg.schedule_segment =
            model.schedule() ? model.schedule()->segment_index(boundaries[s]) : 0;
        plan.total_steps += seg.steps;
        plan.segments.push_back(seg);
    }
    return plan;
}

std::vector<double> sample_times(const StepPlan& plan, std::size_t stride) {
    std::vector<double> times{plan.segments.front().t_start};
    std::size_t global_step = 0;
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
        const auto& seg = plan.segments[s];
        for (std::size_t i = 0; i < seg.steps; ++i) {
            ++global_step;
            const bool last = (s + 1 == plan.segments.size() && i + 1 == seg.steps);
            if (global_step % stride == 0 || last) {
                times.push_back(seg.t_start + seg.dt * static_cast<double>(i + 1));
            }
        }
    }
    return times;
}

Trajectory integrate(const LindbladModel& model, const DensityMatrix& rho0,
                     const TimeGrid& grid, const Matrix* deviation_reference) {
    if (rho0.dim() != model.dim()) {
        throw DimMismatch("integrate: state dimension does not match the model");
    }
    Matrix reference =
        deviation_reference ? *deviation_reference : Matrix(model.dim(), model.dim());
    if (reference.rows() != model.dim() || reference.cols() != model.dim()) {
        throw DimMismatch("integrate: deviation reference dimension mismatch");
    }

    const StepPlan plan = build_step_plan(model, grid);
    const double inv_dim = 1.0 / static_cast<double>(model.dim());

    Trajectory traj;
    auto record = [&](const Matrix& state, double t) {
        DensityMatrix recorded = [&] {
            try {
                return validate_density(state, kRecordHermTol, kTraceDriftTol,
                                        DensityMatrix::kEigFloor);
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "integrate: state left the density-matrix set at t=" << t
                    << " (dt too large): " << e.what();
                throw StepRejected(msg.str());
            }
        }();
        Observables obs;
        obs.purity = purity(recorded.matrix());
        obs.purity_deviation = purity_deviation(recorded.matrix(), reference);
        obs.renyi2 = -std::log(obs.purity);
        obs.vn_entropy = vn_entropy(recorded);
        if (obs.purity < inv_dim - kPurityPad || obs.purity > 1.0 + kPurityPad) {
            std::ostringstream msg;
            msg << "integrate: purity " << obs.purity << " left [1/N, 1] at t=" << t
                << " (dt too large)";
            throw StepRejected(msg.str());
        }
        if (obs.vn_entropy < obs.renyi2 - 1e-9) {
            throw Error("integrate: entropy fell below the Renyi-2 lower bound");
        }
        traj.times.push_back(t);
        traj.observables.push_back(obs);
        traj.states.push_back(std::move(recorded));
    };

    Matrix rho = rho0.matrix();
    record(rho, plan.segments.front().t_start);

    std::size_t global_step = 0;
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
        const auto& seg = plan.segments[s];
        const SegmentOps ops = make_segment_ops(model, seg.schedule_segment);
        const double dt = seg.dt;
        for (std::size_t i = 0; i < seg.steps; ++i) {
            const Matrix k1 = ops.derivative(rho);
            const Matrix k2 = ops.derivative(rho + (0.5 * dt) * k1);
            const Matrix k3 = ops.derivative(rho + (0.5 * dt) * k2);
            const Matrix k4 = ops.derivative(rho + dt * k3);
            rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            ++global_step;

            if (!rho.all_finite()) {
                throw StepRejected("integrate: state entries diverged; reduce dt");
            }
            const double drift = std::abs(rho.trace() - cplx(1.0, 0.0));
            if (drift > kTraceDriftTol) {
                std::ostringstream msg;
                msg << "integrate: trace drift " << drift << " exceeds " << kTraceDriftTol
                    << " (dt too large)";
                throw StepRejected(msg.str());
            }

            const bool last = (s + 1 == plan.segments.size() && i + 1 == seg.steps);
            if (global_step % grid.sample_stride == 0 || last) {
                record(rho, seg.t_start + dt * static_cast<double>(i + 1));
            }
        }
    }
    return traj;
}

namespace {

double steady_residual(const LindbladModel& model, const Matrix& candidate) {
    if (!model.schedule()) {
        return frobenius_norm(apply_generator(model, candidate, 0.0));
    }
    double worst = 0.0;
    for (std::size_t seg = 0; seg < model.schedule()->segments(); ++seg) {
        const SegmentOps ops = make_segment_ops(model, seg);
        worst = std::max(worst, frobenius_norm(ops.derivative(candidate)));
    }
    return worst;
}

// Removes the blocks of rho that couple distinct eigenvalue clusters of the
// normal operator a.
Matrix dephase_in_eigenbasis(const Matrix& rho, const Matrix& a) {
    const NormalEigenSystem sys = normal_eigensystem(a);
    Matrix b = sys.vectors.adjoint() * rho * sys.vectors;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (std::abs(sys.eigenvalues[i] - sys.eigenvalues[j]) > kClusterTol) {
                b(i, j) = 0.0;
            }
        }
    }
    return sys.vectors * b * sys.vectors.adjoint();
}

} // namespace

SteadyState steady_state(const LindbladModel& model, const DensityMatrix& rho0,
                         SteadyStrategy strategy, const Matrix* supplied) {
    SteadyState out;
    out.strategy = strategy;
    const std::size_t n = model.dim();

    switch (strategy) {
    case SteadyStrategy::user_supplied: {
        if (!supplied) {
            throw ValidationError("steady_state: user_supplied needs a reference matrix");
        }
        if (supplied->rows() != n || supplied->cols() != n) {
            throw DimMismatch("steady_state: supplied reference dimension mismatch");
        }
        out.rho_s = *supplied;
        out.residual = steady_residual(model, out.rho_s);
        return out;
    }
    case SteadyStrategy::maximally_mixed: {
        const auto cls = classify_channel(model);
        if (cls.kind == ChannelClass::Kind::general) {
            throw NotDephasing("steady_state: maximally_mixed requires a dephasing channel");
        }
        out.rho_s = (1.0 / static_cast<double>(n)) * Matrix::identity(n);
        break;
    }
    case SteadyStrategy::dephased_diagonal: {
        const auto cls = classify_channel(model);
        if (cls.kind != ChannelClass::Kind::dephasing) {
            throw NotDephasing("steady_state: dephased_diagonal requires a dephasing channel");
        }
        Matrix rho = rho0.matrix();
        for (const auto& term : model.lindblad_terms()) {
            if (frobenius_norm(term.op) == 0.0) continue;
            rho = dephase_in_eigenbasis(rho, term.op);
        }
        out.rho_s = hermitize(rho);
        break;
    }
    case SteadyStrategy::kernel: {
        if (!model.time_independent()) {
            throw ValidationError("steady_state: kernel strategy needs a time-independent model");
        }
        const Superoperator sop = build_superoperator(model, 0.0);
        const KernelVector kv = kernel_vector(sop.generator);
        const Matrix h = hermitize(devectorize(kv.vector, n));
        const double tr = h.trace().real();
        if (std::abs(tr) < 1e-8) {
            throw KernelDegenerate("steady_state: kernel direction has (near) zero trace");
        }
        const Matrix candidate = (1.0 / tr) * h;
        try {
            validate_density(candidate, kRecordHermTol, 1e-8, DensityMatrix::kEigFloor);
        } catch (const Error& e) {
            throw KernelDegenerate(std::string("steady_state: kernel direction is not a "
                                               "valid state: ") +
                                   e.what());
        }
        out.rho_s = candidate;
        out.residual = steady_residual(model, out.rho_s);
        if (out.residual > 1e-8) {
            std::ostringstream msg;
            msg << "steady_state: kernel residual " << out.residual
                << " exceeds 1e-8 after normalization";
            throw KernelDegenerate(msg.str());
        }
        return out;
    }
    case SteadyStrategy::long_time: {
        Matrix rho = rho0.matrix();
        if (model.schedule()) {
            TimeGrid grid{model.schedule()->t_min(), model.schedule()->t_max(), 1e-3, 1000000};
            const Trajectory traj = integrate(model, rho0, grid);
            rho = traj.states.back().matrix();
        } else {
            double t = 0.0;
            double chunk = 1.0;
            DensityMatrix current =
                validate_density(rho, kRecordHermTol, kTraceDriftTol, DensityMatrix::kEigFloor);
            while (frobenius_norm(apply_generator(model, current.matrix(), 0.0)) >= 1e-9) {
                if (t > 1e4) {
                    throw ValidationError(
                        "steady_state: long_time did not reach a stationary state");
                }
                TimeGrid grid{0.0, chunk, 1e-3, 1000000};
                const Trajectory traj = integrate(model, current, grid);
                current = traj.states.back();
                t += chunk;
                chunk = std::min(chunk * 2.0, 64.0);
            }
            rho = current.matrix();
        }
        out.rho_s = rho;
        break;
    }
    }

    out.residual = steady_residual(model, out.rho_s);
    if (out.residual > 1e-8) {
        std::ostringstream msg;
        msg << "steady_state: reference is not stationary (residual " << out.residual
            << " > 1e-8); the strategy does not apply to this model";
        throw ValidationError(msg.str());
    }
    return out;
}

double purity_deviation(const Matrix& rho, const Matrix& rho_s) {
    if (rho.rows() != rho_s.rows() || rho.cols() != rho_s.cols()) {
        throw DimMismatch("purity_deviation: dimension mismatch");
    }
    const double d = frobenius_norm(rho - rho_s);
    return d * d;
}

double purity_deviation(const DensityMatrix& rho, const Matrix& rho_s) {
    return purity_deviation(rho.matrix(), rho_s);
}

double vn_entropy(const DensityMatrix& rho) {
    const SpectralSummary spec = hermitian_eigs(hermitize(rho.matrix()));
    double s = 0.0;
    for (double lambda : spec.eigenvalues) {
        if (lambda < -1e-9) {
            std::ostringstream msg;
            msg << "vn_entropy: eigenvalue " << lambda << " below -1e-9";
            throw NotPositive(msg.str());
        }
        if (lambda <= 0.0) continue;
        s -= lambda * std::log(lambda);
    }
    return std::max(s, 0.0);
}

} // namespace lindblad
