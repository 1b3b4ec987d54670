#pragma once

#include <optional>
#include <vector>

#include "lindblad/liouville.hpp"
#include "lindblad/model.hpp"

namespace lindblad {

/// Fixed-step integration window. Steps are snapped per schedule segment so
/// that breakpoints always coincide with step boundaries (n = ceil(len/dt),
/// never coarser than the requested dt).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 1e-3;
    std::size_t sample_stride = 1;
};

/// Per-sample scalar observables.
struct Observables {
    double purity = 0.0;
    double purity_deviation = 0.0;
    double renyi2 = 0.0;
    double vn_entropy = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<Observables> observables;
};

/// Resolved step plan: one entry per schedule segment intersecting the grid.
struct StepPlan {
    struct Segment {
        double t_start;
        double dt;
        std::size_t steps;
        std::size_t schedule_segment; ///< index into the schedule, 0 if none
    };
    std::vector<Segment> segments;
    std::size_t total_steps = 0;
};

StepPlan build_step_plan(const LindbladModel& model, const TimeGrid& grid);

/// Sample times of a plan under the grid's stride (start, every stride-th
/// step boundary, and the final time).
std::vector<double> sample_times(const StepPlan& plan, std::size_t stride);

/// Classical RK4 with fixed per-segment steps. Trace drift beyond 1e-7 or a
/// non-finite state raises StepRejected; recorded states are re-validated
/// with relaxed tolerances (Hermiticity 1e-8, trace 1e-7). The purity
/// deviation is measured against `deviation_reference` (zero matrix when
/// absent, which makes it the plain purity).
Trajectory integrate(const LindbladModel& model, const DensityMatrix& rho0,
                     const TimeGrid& grid, const Matrix* deviation_reference = nullptr);

enum class SteadyStrategy { user_supplied, maximally_mixed, dephased_diagonal, kernel, long_time };

struct SteadyState {
    Matrix rho_s;
    SteadyStrategy strategy = SteadyStrategy::maximally_mixed;
    double residual = 0.0; ///< ||L(rho_s)||_F
};

/// Reference-state construction for the purity-deviation bound.
///  - maximally_mixed: I/N (dephasing channels only)
///  - dephased_diagonal: rho0 with cross-eigenspace blocks of the channel
///    operators removed (single normal operator or commuting family)
///  - kernel: devectorized, Hermitized, trace-normalized kernel vector of L
///    (time-independent models only)
///  - long_time: integrate until ||drho/dt||_F < 1e-9
///  - user_supplied: the `supplied` matrix, recorded as-is
SteadyState steady_state(const LindbladModel& model, const DensityMatrix& rho0,
                         SteadyStrategy strategy, const Matrix* supplied = nullptr);

/// trace[(rho - rho_s)^2] computed as ||vec(rho) - vec(rho_s)||^2.
double purity_deviation(const DensityMatrix& rho, const Matrix& rho_s);
double purity_deviation(const Matrix& rho, const Matrix& rho_s);

/// -sum lambda ln lambda; eigenvalues in [-1e-9, 0) clamp to 0.
double vn_entropy(const DensityMatrix& rho);

} // namespace lindblad
