#include "lindblad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lindblad {

namespace {

struct RatePiece {
    double t0 = 0.0;
    double t1 = 0.0;
    double hilbert = 0.0;
    double liouville = 0.0;
    double cooling = 0.0;
};

double hilbert_rate_for_ops(const std::vector<Matrix>& ops) {
    double sum = 0.0;
    for (const Matrix& a : ops) sum += frobenius_norm_sq(a);
    return 4.0 * sum;
}

// One skew-part eigensolve yields both the Liouville and the cooling rate.
std::pair<double, double> skew_rates_for_ops(const LindbladModel& model,
                                             const std::vector<Matrix>& ops) {
    const Superoperator sop = build_superoperator_for_segment(model, ops);
    const SkewPart sk = skew_part(sop);
    return {skew_spectral_norm(sk), max_growth_rate(sk)};
}

std::vector<RatePiece> rate_pieces(const LindbladModel& model, double t_start, double t_end,
                                   bool with_skew) {
    model.require_in_domain(t_start, t_end);
    std::vector<double> boundaries{t_start};
    if (model.schedule()) {
        for (double b : model.schedule()->breakpoints) {
            if (b > t_start && b < t_end) boundaries.push_back(b);
        }
    }
    boundaries.push_back(t_end);

    std::vector<RatePiece> pieces;
    for (std::size_t s = 0; s + 1 < boundaries.size(); ++s) {
        RatePiece piece;
        piece.t0 = boundaries[s];
        piece.t1 = boundaries[s + 1];
        const std::size_t seg =
            model.schedule() ? model.schedule()->segment_index(piece.t0) : 0;
        const std::vector<Matrix> ops = model.lindblad_in_segment(seg);
        piece.hilbert = hilbert_rate_for_ops(ops);
        if (with_skew) {
            const auto [sp, growth] = skew_rates_for_ops(model, ops);
            piece.liouville = sp;
            piece.cooling = growth;
        }
        pieces.push_back(piece);
    }
    return pieces;
}

double piece_rate(const RatePiece& piece, RateKind kind) {
    switch (kind) {
    case RateKind::hilbert: return piece.hilbert;
    case RateKind::liouville: return piece.liouville;
    case RateKind::cooling: return piece.cooling;
    }
    return 0.0;
}

void require_purity_range(double p_init, std::size_t dim, const char* where) {
    const double floor = 1.0 / static_cast<double>(dim);
    if (!(p_init >= floor - 1e-9 && p_init <= 1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << where << ": initial purity " << p_init << " outside [1/N, 1] for N=" << dim;
        throw ValidationError(msg.str());
    }
}

} // namespace

double hilbert_rate(const LindbladModel& model, double t) {
    model.require_in_domain(t);
    return hilbert_rate_for_ops(model.lindblad_at(t));
}

double liouville_rate(const LindbladModel& model, double t) {
    model.require_in_domain(t);
    return skew_rates_for_ops(model, model.lindblad_at(t)).first;
}

double cooling_rate(const LindbladModel& model, double t) {
    model.require_in_domain(t);
    return skew_rates_for_ops(model, model.lindblad_at(t)).second;
}

double bound_action(const LindbladModel& model, const TimeGrid& grid, RateKind kind) {
    const bool with_skew = kind != RateKind::hilbert;
    double action = 0.0;
    for (const RatePiece& piece : rate_pieces(model, grid.t_start, grid.t_end, with_skew)) {
        action += piece_rate(piece, kind) * (piece.t1 - piece.t0);
    }
    return action;
}

PurityEnvelopes purity_envelopes(double p_init, double action_hilbert,
                                 double action_liouville, std::size_t dim,
                                 std::optional<double> pd_init) {
    require_purity_range(p_init, dim, "purity_envelopes");
    if (action_hilbert < 0.0 || action_liouville < 0.0) {
        throw ValidationError("purity_envelopes: actions must be nonnegative");
    }
    const double lo = 1.0 / static_cast<double>(dim);
    auto clamp = [&](double x) { return std::min(1.0, std::max(lo, x)); };
    auto band = [&](double action) {
        EnvelopeBand b;
        b.lower_raw = p_init * std::exp(-action);
        b.upper_raw = p_init * std::exp(action);
        b.lower = clamp(b.lower_raw);
        b.upper = clamp(b.upper_raw);
        return b;
    };
    PurityEnvelopes out;
    out.hilbert = band(action_hilbert);
    out.liouville = band(action_liouville);
    if (pd_init) {
        out.deviation = std::make_pair(*pd_init * std::exp(-action_liouville),
                                       *pd_init * std::exp(action_liouville));
    }
    return out;
}

double dephasing_floor_value(double p_init, std::size_t dim, double action_liouville) {
    require_purity_range(p_init, dim, "dephasing_floor");
    const double mixed = 1.0 / static_cast<double>(dim);
    return mixed + (p_init - mixed) * std::exp(-action_liouville);
}

double dephasing_floor(const LindbladModel& model, double p_init, double action_liouville) {
    const ChannelClass cls = classify_channel(model);
    if (cls.kind != ChannelClass::Kind::dephasing) {
        throw NotDephasing("dephasing_floor: channel is not purely dephasing");
    }
    return dephasing_floor_value(p_init, model.dim(), action_liouville);
}

double control_floor(std::size_t dim, double action_liouville) {
    const double n = static_cast<double>(dim);
    return 1.0 / n + (n - 1.0) / n * std::exp(-action_liouville);
}

double control_exact_rate(double nx, double ny, double nz) {
    if (nx < 0.0 || ny < 0.0 || nz < 0.0) {
        throw ValidationError("control_exact_rate: noise amplitudes must be >= 0");
    }
    return nx + ny + nz - std::min({nx, ny, nz});
}

double dephasing_eig_rate(const Matrix& a) {
    const NormalEigenSystem sys = normal_eigensystem(a);
    double best = 0.0;
    for (std::size_t i = 0; i < sys.eigenvalues.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.eigenvalues.size(); ++j) {
            best = std::max(best, std::norm(sys.eigenvalues[i] - sys.eigenvalues[j]));
        }
    }
    return best;
}

double hermitian_gap_rate(const Matrix& a) {
    const double defect = hermiticity_defect(a);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "hermitian_gap_rate: operator not Hermitian (defect " << defect << ")";
        throw NotHermitian(msg.str());
    }
    const SpectralSummary spec = hermitian_eigs(a);
    return spec.gap * spec.gap;
}

double entropy_floor(double p_init, const LindbladModel& model, const TimeGrid& grid) {
    if (!(p_init > 0.0 && p_init <= 1.0 + 1e-9)) {
        throw ValidationError("entropy_floor: initial purity must lie in (0, 1]");
    }
    const double action = bound_action(model, grid, RateKind::cooling);
    return std::max(0.0, -std::log(p_init) - action);
}

BoundReport compute_bound_report(const LindbladModel& model, const TimeGrid& grid,
                                 double p_init, std::optional<double> pd_init,
                                 const BoundRequest& request) {
    require_purity_range(p_init, model.dim(), "compute_bound_report");
    if (request.dephasing_floor) {
        const ChannelClass cls = classify_channel(model);
        if (cls.kind != ChannelClass::Kind::dephasing) {
            throw NotDephasing("compute_bound_report: dephasing_floor requested for a "
                               "channel that is not purely dephasing");
        }
    }
    if (request.deviation && !pd_init) {
        throw ValidationError("compute_bound_report: deviation envelopes need P_D(0)");
    }

    BoundReport report;
    report.times = sample_times(build_step_plan(model, grid), grid.sample_stride);
    const std::vector<RatePiece> pieces = rate_pieces(model, grid.t_start, grid.t_end, true);

    const std::size_t count = report.times.size();
    report.hilbert_rate_series.resize(count);
    report.liouville_rate_series.resize(count);
    report.cooling_rate_series.resize(count);
    report.action_hilbert_cum.resize(count);
    report.action_liouville_cum.resize(count);
    report.action_cooling_cum.resize(count);
    report.cooling_valid.resize(count);

    std::size_t piece_idx = 0;
    double base_h = 0.0, base_l = 0.0, base_c = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = report.times[i];
        while (piece_idx + 1 < pieces.size() && t >= pieces[piece_idx].t1) {
            const double len = pieces[piece_idx].t1 - pieces[piece_idx].t0;
            base_h += pieces[piece_idx].hilbert * len;
            base_l += pieces[piece_idx].liouville * len;
            base_c += pieces[piece_idx].cooling * len;
            ++piece_idx;
        }
        const RatePiece& piece = pieces[piece_idx];
        const double local = t - piece.t0;
        report.hilbert_rate_series[i] = piece.hilbert;
        report.liouville_rate_series[i] = piece.liouville;
        report.cooling_rate_series[i] = piece.cooling;
        report.cooling_valid[i] = piece.cooling > 0.0;
        report.action_hilbert_cum[i] = base_h + piece.hilbert * local;
        report.action_liouville_cum[i] = base_l + piece.liouville * local;
        report.action_cooling_cum[i] = base_c + piece.cooling * local;
    }
    report.action_hilbert = report.action_hilbert_cum.back();
    report.action_liouville = report.action_liouville_cum.back();
    report.action_cooling = report.action_cooling_cum.back();

    const double neg_log_p0 = -std::log(p_init);
    for (std::size_t i = 0; i < count; ++i) {
        const PurityEnvelopes env =
            purity_envelopes(p_init, report.action_hilbert_cum[i],
                             report.action_liouville_cum[i], model.dim(), pd_init);
        if (request.hilbert) {
            report.hilbert_lower.push_back(env.hilbert.lower);
            report.hilbert_upper.push_back(env.hilbert.upper);
            report.hilbert_lower_raw.push_back(env.hilbert.lower_raw);
            report.hilbert_upper_raw.push_back(env.hilbert.upper_raw);
        }
        if (request.liouville) {
            report.liouville_lower.push_back(env.liouville.lower);
            report.liouville_upper.push_back(env.liouville.upper);
            report.liouville_lower_raw.push_back(env.liouville.lower_raw);
            report.liouville_upper_raw.push_back(env.liouville.upper_raw);
        }
        if (request.deviation) {
            report.deviation_lower.push_back(env.deviation->first);
            report.deviation_upper.push_back(env.deviation->second);
        }
        if (request.dephasing_floor) {
            report.dephasing_floor_series.push_back(
                dephasing_floor_value(p_init, model.dim(), report.action_liouville_cum[i]));
        }
        if (request.entropy_floor) {
            report.entropy_floor_series.push_back(
                std::max(0.0, neg_log_p0 - report.action_cooling_cum[i]));
        }
    }
    return report;
}

} // namespace lindblad
