#include "lindblad/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lindblad {

namespace ops {

Matrix sigma_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

Matrix sigma_y() {
    return Matrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
}

Matrix sigma_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Matrix sigma_minus() { return Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}); }

Matrix sigma_plus() { return Matrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}); }

Matrix identity(std::size_t n) { return Matrix::identity(n); }

} // namespace ops

double purity(const Matrix& rho) {
    const double f = frobenius_norm(rho);
    return f * f;
}

DensityMatrix validate_density(const Matrix& m) {
    return validate_density(m, DensityMatrix::kHermTol, DensityMatrix::kTraceTol,
                            DensityMatrix::kEigFloor);
}

DensityMatrix validate_density(const Matrix& m, double herm_tol, double trace_tol,
                               double eig_floor) {
    if (!m.is_square() || m.empty()) {
        throw DimMismatch("validate_density: state must be a nonempty square matrix");
    }
    if (!m.all_finite()) {
        throw ValidationError("validate_density: state has non-finite entries");
    }
    const double defect = hermiticity_defect(m);
    if (defect > herm_tol) {
        std::ostringstream msg;
        msg << "validate_density: not Hermitian (max entry defect " << defect
            << " > " << herm_tol << ")";
        throw NotHermitian(msg.str());
    }
    const double trace_err = std::abs(m.trace() - cplx(1.0, 0.0));
    if (trace_err > trace_tol) {
        std::ostringstream msg;
        msg << "validate_density: trace differs from 1 by " << trace_err
            << " (> " << trace_tol << ")";
        throw TraceNotOne(msg.str());
    }
    const SpectralSummary spec = hermitian_eigs(hermitize(m));
    if (spec.eigenvalues.front() < eig_floor) {
        std::ostringstream msg;
        msg << "validate_density: smallest eigenvalue " << spec.eigenvalues.front()
            << " below floor " << eig_floor;
        throw NotPositive(msg.str());
    }
    return DensityMatrix(m);
}

std::size_t Schedule::segment_index(double t) const {
    if (t < breakpoints.front() || t > breakpoints.back()) {
        std::ostringstream msg;
        msg << "time " << t << " outside schedule domain [" << breakpoints.front()
            << ", " << breakpoints.back() << "]";
        throw TimeOutOfRange(msg.str());
    }
    // Right-continuous lookup; the final breakpoint belongs to the last segment.
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
    if (idx == 0) idx = 1;
    if (idx > segments()) idx = segments();
    return idx - 1;
}

namespace {

void validate_schedule(const Schedule& s, std::size_t hamiltonian_count,
                       const std::vector<OperatorTerm>& lindblad_terms) {
    (void)hamiltonian_count;
    if (s.breakpoints.size() < 2) {
        throw ValidationError("schedule: needs at least two breakpoints");
    }
    for (std::size_t i = 0; i + 1 < s.breakpoints.size(); ++i) {
        if (!(s.breakpoints[i] < s.breakpoints[i + 1])) {
            std::ostringstream msg;
            msg << "schedule: breakpoints must be strictly increasing (index " << i + 1 << ")";
            throw ValidationError(msg.str());
        }
    }
    if (s.segment_values.size() != s.breakpoints.size() - 1) {
        throw ValidationError("schedule: segment count must equal breakpoint count - 1");
    }
    std::size_t width = s.segment_values.empty() ? 0 : s.segment_values.front().size();
    for (const auto& row : s.segment_values) {
        if (row.size() != width) {
            throw ValidationError("schedule: ragged segment value rows");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw ValidationError("schedule: non-finite coefficient");
        }
    }
    for (const OperatorTerm& term : lindblad_terms) {
        if (term.coeff_index < 0) continue;
        for (std::size_t seg = 0; seg < s.segments(); ++seg) {
            const double v = s.segment_values[seg][static_cast<std::size_t>(term.coeff_index)];
            if (v < 0.0) {
                std::ostringstream msg;
                msg << "schedule: noise amplitude must be >= 0, got " << v
                    << " in segment " << seg;
                throw ValidationError(msg.str());
            }
        }
    }
}

} // namespace

LindbladModel::LindbladModel(std::size_t dim, std::vector<OperatorTerm> hamiltonian_terms,
                             std::vector<OperatorTerm> lindblad_terms,
                             std::optional<Schedule> schedule)
    : dim_(dim),
      hamiltonian_terms_(std::move(hamiltonian_terms)),
      lindblad_terms_(std::move(lindblad_terms)),
      schedule_(std::move(schedule)) {
    if (dim_ == 0) throw DimMismatch("LindbladModel: dim must be positive");
    std::size_t max_index = 0;
    bool any_index = false;
    auto check_term = [&](const OperatorTerm& term, bool hermitian_required,
                          const char* what) {
        if (term.op.rows() != dim_ || term.op.cols() != dim_) {
            std::ostringstream msg;
            msg << what << ": operator must be " << dim_ << "x" << dim_ << ", got "
                << term.op.rows() << "x" << term.op.cols();
            throw DimMismatch(msg.str());
        }
        if (!term.op.all_finite()) {
            std::ostringstream msg;
            msg << what << ": operator has non-finite entries";
            throw ValidationError(msg.str());
        }
        if (hermitian_required) {
            const double defect = hermiticity_defect(term.op);
            if (defect > 1e-10) {
                std::ostringstream msg;
                msg << what << ": Hamiltonian term not Hermitian (defect " << defect << ")";
                throw NotHermitian(msg.str());
            }
        }
        if (term.coeff_index >= 0) {
            any_index = true;
            max_index = std::max(max_index, static_cast<std::size_t>(term.coeff_index));
        } else if (term.coeff_index < -1) {
            throw ValidationError("operator term: coefficient index must be -1 or >= 0");
        }
    };
    for (const auto& t : hamiltonian_terms_) check_term(t, true, "hamiltonian term");
    for (const auto& t : lindblad_terms_) check_term(t, false, "lindblad term");

    if (schedule_) {
        validate_schedule(*schedule_, hamiltonian_terms_.size(), lindblad_terms_);
        const std::size_t width =
            schedule_->segment_values.empty() ? 0 : schedule_->segment_values.front().size();
        if (any_index && max_index >= width) {
            std::ostringstream msg;
            msg << "schedule: coefficient index " << max_index
                << " out of range for width " << width;
            throw ValidationError(msg.str());
        }
    } else if (any_index) {
        throw ValidationError("model: coefficient indices given but no schedule");
    }
}

void LindbladModel::require_in_domain(double t) const {
    if (schedule_) schedule_->segment_index(t);
}

void LindbladModel::require_in_domain(double t_start, double t_end) const {
    require_in_domain(t_start);
    require_in_domain(t_end);
}

double LindbladModel::coefficient(int index, double t) const {
    if (index < 0) {
        require_in_domain(t);
        return 1.0;
    }
    return schedule_->segment_values[schedule_->segment_index(t)][static_cast<std::size_t>(index)];
}

double LindbladModel::coefficient_in_segment(int index, std::size_t segment) const {
    if (index < 0) return 1.0;
    return schedule_->segment_values[segment][static_cast<std::size_t>(index)];
}

Matrix LindbladModel::hamiltonian_at(double t) const {
    require_in_domain(t);
    Matrix h(dim_, dim_);
    for (const auto& term : hamiltonian_terms_) {
        h += coefficient(term.coeff_index, t) * term.op;
    }
    return h;
}

std::vector<Matrix> LindbladModel::lindblad_at(double t) const {
    require_in_domain(t);
    std::vector<Matrix> out;
    out.reserve(lindblad_terms_.size());
    for (const auto& term : lindblad_terms_) {
        out.push_back(coefficient(term.coeff_index, t) * term.op);
    }
    return out;
}

std::vector<Matrix> LindbladModel::lindblad_in_segment(std::size_t segment) const {
    std::vector<Matrix> out;
    out.reserve(lindblad_terms_.size());
    for (const auto& term : lindblad_terms_) {
        out.push_back(coefficient_in_segment(term.coeff_index, segment) * term.op);
    }
    return out;
}

ChannelClass classify_channel(const LindbladModel& model) {
    ChannelClass cls;
    bool any_nonzero = false;
    bool all_normal = true;
    for (const auto& term : model.lindblad_terms()) {
        const Matrix comm = term.op * term.op.adjoint() - term.op.adjoint() * term.op;
        const bool normal = frobenius_norm(comm) <= 1e-10;
        cls.per_operator_normality.push_back(normal);
        if (frobenius_norm(term.op) > 0.0) any_nonzero = true;
        all_normal = all_normal && normal;
    }
    if (!any_nonzero) {
        cls.kind = ChannelClass::Kind::unitary;
    } else if (all_normal) {
        cls.kind = ChannelClass::Kind::dephasing;
    } else {
        cls.kind = ChannelClass::Kind::general;
    }
    return cls;
}

Matrix apply_generator(const LindbladModel& model, const Matrix& x, double t) {
    if (x.rows() != model.dim() || x.cols() != model.dim()) {
        std::ostringstream msg;
        msg << "apply_generator: state is " << x.rows() << "x" << x.cols()
            << " but the model dimension is " << model.dim();
        throw DimMismatch(msg.str());
    }
    model.require_in_domain(t);

    Matrix out(model.dim(), model.dim());
    if (!model.hamiltonian_terms().empty()) {
        const Matrix h = model.hamiltonian_at(t);
        out += cplx(0.0, -1.0) * (h * x - x * h);
    }
    for (const Matrix& a : model.lindblad_at(t)) {
        const Matrix adag = a.adjoint();
        const Matrix gram = adag * a;
        out += a * x * adag - 0.5 * (gram * x + x * gram);
    }
    return out;
}

Matrix apply_lindbladian(const LindbladModel& model, const DensityMatrix& rho, double t) {
    return apply_generator(model, rho.matrix(), t);
}

Matrix traceless_shift(const Matrix& a) {
    if (!a.is_square() || a.empty()) {
        throw DimMismatch("traceless_shift: requires a nonempty square matrix");
    }
    const cplx shift = a.trace() / static_cast<double>(a.rows());
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= shift;
    return out;
}

} // namespace lindblad
