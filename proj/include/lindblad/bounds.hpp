#pragma once

#include <optional>
#include <vector>

#include "lindblad/dynamics.hpp"
#include "lindblad/liouville.hpp"
#include "lindblad/model.hpp"

namespace lindblad {

enum class RateKind { hilbert, liouville, cooling };

/// 4 sum_k ||A_k(t)||_F^2; independent of every Hamiltonian term.
double hilbert_rate(const LindbladModel& model, double t);

/// ||H_r - H_r^dag||_sp of the assembled superoperator at time t.
double liouville_rate(const LindbladModel& model, double t);

/// max eigenvalue of -i(H_r - H_r^dag), signed; 0 for dephasing channels.
double cooling_rate(const LindbladModel& model, double t);

/// Exact integral of the requested rate over the grid window: rates are
/// piecewise constant, so the action is a sum of rectangles.
double bound_action(const LindbladModel& model, const TimeGrid& grid, RateKind kind);

/// Exponential purity envelopes P0 * exp(-+ action), raw and clamped to the
/// physical range [1/N, 1].
struct EnvelopeBand {
    double lower_raw = 0.0;
    double upper_raw = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct PurityEnvelopes {
    EnvelopeBand hilbert;
    EnvelopeBand liouville;
    /// P_D(0) * exp(-+ action_liouville), unclamped; present when a P_D(0)
    /// was supplied.
    std::optional<std::pair<double, double>> deviation;
};

PurityEnvelopes purity_envelopes(double p_init, double action_hilbert,
                                 double action_liouville, std::size_t dim,
                                 std::optional<double> pd_init = std::nullopt);

/// 1/N + (P0 - 1/N) exp(-action): the dephasing purity floor.
double dephasing_floor_value(double p_init, std::size_t dim, double action_liouville);

/// Same, gated on the channel classification (throws NotDephasing).
double dephasing_floor(const LindbladModel& model, double p_init, double action_liouville);

/// 1/N + ((N-1)/N) exp(-action): the pure-initial-state control floor.
double control_floor(std::size_t dim, double action_liouville);

/// Analytic skew-norm of the three half-Pauli control-noise channels
/// A_k = sqrt(n_k) sigma_k / 2: sum_k n_k - min_k n_k.
double control_exact_rate(double nx, double ny, double nz);

/// max_ij |lambda_i - lambda_j|^2 over the eigenvalues of a normal operator.
double dephasing_eig_rate(const Matrix& a);

/// Delta_A^2 with Delta_A = max eig - min eig of a Hermitian operator.
double hermitian_gap_rate(const Matrix& a);

/// -ln P0 - integral of the signed cooling rate, clamped below at 0.
double entropy_floor(double p_init, const LindbladModel& model, const TimeGrid& grid);

struct BoundRequest {
    bool hilbert = true;
    bool liouville = true;
    bool deviation = false;
    bool dephasing_floor = false;
    bool entropy_floor = false;
};

/// Rates, cumulative actions and envelope curves on the sample times of the
/// grid. Raw and clamped purity envelopes are both kept.
struct BoundReport {
    std::vector<double> times;
    std::vector<double> hilbert_rate_series;
    std::vector<double> liouville_rate_series;
    std::vector<double> cooling_rate_series;
    std::vector<double> action_hilbert_cum;
    std::vector<double> action_liouville_cum;
    std::vector<double> action_cooling_cum;
    double action_hilbert = 0.0;
    double action_liouville = 0.0;
    double action_cooling = 0.0;
    std::vector<double> hilbert_lower, hilbert_upper;
    std::vector<double> hilbert_lower_raw, hilbert_upper_raw;
    std::vector<double> liouville_lower, liouville_upper;
    std::vector<double> liouville_lower_raw, liouville_upper_raw;
    std::vector<double> deviation_lower, deviation_upper;
    std::vector<double> dephasing_floor_series;
    std::vector<double> entropy_floor_series;
    std::vector<bool> cooling_valid; ///< cooling rate > 0 at the sample
};

BoundReport compute_bound_report(const LindbladModel& model, const TimeGrid& grid,
                                 double p_init, std::optional<double> pd_init,
                                 const BoundRequest& request);

} // namespace lindblad
