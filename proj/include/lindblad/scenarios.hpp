#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lindblad/bounds.hpp"
#include "lindblad/dynamics.hpp"
#include "lindblad/model.hpp"
#include "lindblad/rng.hpp"

namespace lindblad {

enum class BoundKind { hilbert, liouville, deviation, dephasing_floor, entropy_floor };

struct Scenario {
    std::string name;
    LindbladModel model;
    std::vector<DensityMatrix> initial_states;
    TimeGrid grid;
    std::vector<BoundKind> requested_bounds;
    SteadyStrategy steady_strategy = SteadyStrategy::maximally_mixed;
};

/// Default seed for the built-in random initial conditions.
inline constexpr std::uint64_t kDefaultScenarioSeed = 20240916;

struct ScenarioOptions {
    std::uint64_t seed = kDefaultScenarioSeed;
    std::size_t trajectory_count = 100;      ///< fig1 Haar samples
    std::array<double, 3> noise = {1.0, 1.0, 1.0}; ///< control n_x, n_y, n_z
    double dephasing_amplitude = 0.5;        ///< tightness A = a sigma_z
    double tightness_population = 0.7;       ///< tightness rho_00
    cplx tightness_coherence = 0.25;         ///< tightness rho_01
};

/// Built-in registry: fig1, fig2, control, tightness. Throws UnknownScenario.
Scenario builtin_scenario(const std::string& name, const ScenarioOptions& opts = {});

enum class SamplerKind { haar_pure, ginibre_density, ginibre_operator, random_normal_operator };

struct SamplerConfig {
    SamplerKind kind = SamplerKind::haar_pure;
    std::size_t dim = 2;
    std::uint64_t seed = kDefaultScenarioSeed;
};

SamplerKind sampler_kind_from_name(const std::string& name);

/// Deterministic per (seed, index): sample i is drawn from substream i and
/// does not depend on count.
std::vector<DensityMatrix> sample_states(const SamplerConfig& cfg, std::size_t count);
std::vector<Matrix> sample_operators(const SamplerConfig& cfg, std::size_t count);

/// Haar-distributed unitary from the QR factorization of a Ginibre sample
/// (Gram-Schmidt with a second orthogonalization pass, R-diagonal phases
/// fixed).
Matrix random_unitary(rng::Stream& stream, std::size_t dim);

/// M independent copies: X -> sum_m I x ... x X x ... x I for every
/// Hamiltonian and Lindblad term. Requires a time-independent model and
/// dim^M <= 64 (DimTooLarge otherwise).
LindbladModel compose_independent(const LindbladModel& model, std::size_t copies);

} // namespace lindblad
