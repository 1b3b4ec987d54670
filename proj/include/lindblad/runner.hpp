#pragma once

#include <cstdint>
#include <string>

#include "lindblad/config.hpp"

namespace lindblad::run {

/// `simulate`: one trajectory per initial state; CSV rows
/// (state_index, t, purity, purity_deviation, renyi2, vn_entropy).
void simulate(const RunConfig& cfg, const std::string& output_override);

/// `bounds`: rate/action/envelope curves for the model over the grid.
void bounds_report(const RunConfig& cfg, const std::string& output_override);

/// `figures fig1|fig2`: the built-in figure datasets, written into out_dir.
void figures(const std::string& scenario, std::uint64_t seed, const std::string& out_dir);

/// `compose --copies M`: M-scaling report for the composed model.
void compose_report(const RunConfig& cfg, std::size_t copies,
                    const std::string& output_override);

} // namespace lindblad::run
