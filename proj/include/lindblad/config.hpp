#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lindblad/bounds.hpp"
#include "lindblad/dynamics.hpp"
#include "lindblad/model.hpp"
#include "lindblad/scenarios.hpp"

namespace lindblad {

/// Parsed run configuration. The JSON schema is strict: unknown fields are
/// rejected with the offending path, complex scalars are [re, im] pairs and
/// matrices are row-major nested arrays.
struct RunConfig {
    LindbladModel model;
    std::optional<Matrix> initial_matrix;
    std::optional<SamplerConfig> initial_sampler;
    std::size_t initial_count = 1;
    TimeGrid grid;
    BoundRequest bounds;
    std::optional<SteadyStrategy> steady;
    std::optional<Matrix> steady_matrix;
    std::string output;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

/// Throws ParseError for malformed JSON, SchemaError for schema violations
/// (field-addressed) and the module-level errors for invalid physics inputs.
RunConfig parse_config(const std::string& text);

} // namespace lindblad
