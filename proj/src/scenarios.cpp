#include "lindblad/scenarios.hpp"

#include <cmath>
#include <sstream>

namespace lindblad {

namespace {

Matrix ginibre(rng::Stream& stream, std::size_t dim) {
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = stream.complex_gaussian();
    return g;
}

DensityMatrix haar_pure_state(rng::Stream& stream, std::size_t dim) {
    std::vector<cplx> psi(dim);
    for (auto& c : psi) c = stream.complex_gaussian();
    const double nrm = vector_norm(psi);
    Matrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            rho(i, j) = psi[i] * std::conj(psi[j]) / (nrm * nrm);
    return validate_density(hermitize(rho));
}

DensityMatrix ginibre_density_state(rng::Stream& stream, std::size_t dim) {
    const Matrix g = ginibre(stream, dim);
    Matrix rho = g * g.adjoint();
    rho = (1.0 / rho.trace().real()) * rho;
    return validate_density(hermitize(rho));
}

} // namespace

Matrix random_unitary(rng::Stream& stream, std::size_t dim) {
    const Matrix g = ginibre(stream, dim);
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] = g(i, j);

    for (std::size_t j = 0; j < dim; ++j) {
        // Two Gram-Schmidt passes keep the columns orthonormal to round-off.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const cplx proj = inner(cols[k], cols[j]);
                for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
            }
        }
        const double nrm = vector_norm(cols[j]);
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] /= nrm;
    }

    // Rotate each column so that <q_j, g_j> is real positive, matching the
    // positive-R-diagonal Haar convention.
    Matrix q(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<cplx> gj(dim);
        for (std::size_t i = 0; i < dim; ++i) gj[i] = g(i, j);
        const cplx r = inner(cols[j], gj);
        const double mag = std::abs(r);
        const cplx phase = mag > 0.0 ? r / mag : cplx(1.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) = cols[j][i] * phase;
    }
    return q;
}

SamplerKind sampler_kind_from_name(const std::string& name) {
    if (name == "haar_pure") return SamplerKind::haar_pure;
    if (name == "ginibre_density") return SamplerKind::ginibre_density;
    if (name == "ginibre_operator") return SamplerKind::ginibre_operator;
    if (name == "random_normal_operator") return SamplerKind::random_normal_operator;
    throw SchemaError("unknown sampler kind: " + name);
}

std::vector<DensityMatrix> sample_states(const SamplerConfig& cfg, std::size_t count) {
    if (cfg.kind != SamplerKind::haar_pure && cfg.kind != SamplerKind::ginibre_density) {
        throw ValidationError("sample_states: sampler kind does not produce states");
    }
    std::vector<DensityMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        rng::Stream stream(cfg.seed, i);
        out.push_back(cfg.kind == SamplerKind::haar_pure
                          ? haar_pure_state(stream, cfg.dim)
                          : ginibre_density_state(stream, cfg.dim));
    }
    return out;
}

std::vector<Matrix> sample_operators(const SamplerConfig& cfg, std::size_t count) {
    if (cfg.kind != SamplerKind::ginibre_operator &&
        cfg.kind != SamplerKind::random_normal_operator) {
        throw ValidationError("sample_operators: sampler kind does not produce operators");
    }
    std::vector<Matrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        rng::Stream stream(cfg.seed, i);
        if (cfg.kind == SamplerKind::ginibre_operator) {
            out.push_back(ginibre(stream, cfg.dim));
        } else {
            const Matrix u = random_unitary(stream, cfg.dim);
            Matrix d(cfg.dim, cfg.dim);
            for (std::size_t k = 0; k < cfg.dim; ++k) d(k, k) = stream.complex_gaussian();
            out.push_back(u * d * u.adjoint());
        }
    }
    return out;
}

Scenario builtin_scenario(const std::string& name, const ScenarioOptions& opts) {
    if (name == "fig1") {
        LindbladModel model(2, {{ops::sigma_x(), -1}}, {{ops::sigma_z(), -1}});
        SamplerConfig sampler{SamplerKind::haar_pure, 2, opts.seed};
        Scenario sc{name,
                    std::move(model),
                    sample_states(sampler, opts.trajectory_count),
                    TimeGrid{0.0, 3.0, 1e-3, 10},
                    {BoundKind::hilbert, BoundKind::liouville, BoundKind::dephasing_floor},
                    SteadyStrategy::maximally_mixed};
        return sc;
    }
    if (name == "fig2") {
        LindbladModel model(2, {}, {{ops::sigma_minus(), -1}});
        const Matrix mixed = 0.5 * Matrix::identity(2);
        Scenario sc{name,
                    std::move(model),
                    {validate_density(mixed)},
                    TimeGrid{0.0, 3.0, 1e-3, 10},
                    {BoundKind::hilbert, BoundKind::liouville, BoundKind::entropy_floor},
                    SteadyStrategy::kernel};
        return sc;
    }
    if (name == "control") {
        std::vector<OperatorTerm> channels;
        const std::array<Matrix, 3> paulis{ops::sigma_x(), ops::sigma_y(), ops::sigma_z()};
        for (std::size_t k = 0; k < 3; ++k) {
            if (opts.noise[k] < 0.0) {
                throw ValidationError("control scenario: noise amplitudes must be >= 0");
            }
            channels.push_back({(0.5 * std::sqrt(opts.noise[k])) * paulis[k], -1});
        }
        LindbladModel model(2, {}, std::move(channels));
        SamplerConfig sampler{SamplerKind::haar_pure, 2, opts.seed};
        Scenario sc{name,
                    std::move(model),
                    sample_states(sampler, std::max<std::size_t>(1, opts.trajectory_count / 10)),
                    TimeGrid{0.0, 3.0, 1e-3, 10},
                    {BoundKind::liouville, BoundKind::dephasing_floor},
                    SteadyStrategy::maximally_mixed};
        return sc;
    }
    if (name == "tightness") {
        const double a = opts.tightness_population;
        const cplx b = opts.tightness_coherence;
        if (!(a >= 0.0 && a <= 1.0) || std::norm(b) > a * (1.0 - a)) {
            throw ValidationError("tightness scenario: rho_00 and rho_01 must form a state");
        }
        LindbladModel model(2, {}, {{opts.dephasing_amplitude * ops::sigma_z(), -1}});
        const Matrix rho0 =
            Matrix::from_rows({{a, b}, {std::conj(b), 1.0 - a}});
        Scenario sc{name,
                    std::move(model),
                    {validate_density(rho0)},
                    TimeGrid{0.0, 5.0, 1e-3, 10},
                    {BoundKind::liouville, BoundKind::deviation},
                    SteadyStrategy::dephased_diagonal};
        return sc;
    }
    throw UnknownScenario("unknown scenario: " + name +
                          " (known: fig1, fig2, control, tightness)");
}

namespace {

Matrix embed(const Matrix& op, std::size_t position, std::size_t copies, std::size_t dim) {
    Matrix out = position == 0 ? op : Matrix::identity(dim);
    for (std::size_t m = 1; m < copies; ++m) {
        out = kron(out, m == position ? op : Matrix::identity(dim));
    }
    return out;
}

} // namespace

LindbladModel compose_independent(const LindbladModel& model, std::size_t copies) {
    if (copies < 2) {
        throw ValidationError("compose_independent: need at least 2 copies");
    }
    if (!model.time_independent()) {
        throw ValidationError("compose_independent: model must be time-independent");
    }
    double total = 1.0;
    for (std::size_t m = 0; m < copies; ++m) total *= static_cast<double>(model.dim());
    if (total > 64.0) {
        std::ostringstream msg;
        msg << "compose_independent: composite dimension " << total
            << " exceeds 64 (Liouville matrices would exceed 4096^2)";
        throw DimTooLarge(msg.str());
    }

    std::vector<OperatorTerm> hams;
    std::vector<OperatorTerm> linds;
    for (std::size_t m = 0; m < copies; ++m) {
        for (const auto& term : model.hamiltonian_terms()) {
            hams.push_back({embed(term.op, m, copies, model.dim()), -1});
        }
        for (const auto& term : model.lindblad_terms()) {
            linds.push_back({embed(term.op, m, copies, model.dim()), -1});
        }
    }
    return LindbladModel(static_cast<std::size_t>(total), std::move(hams), std::move(linds));
}

} // namespace lindblad
