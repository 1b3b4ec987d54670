#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lindblad/matrix.hpp"

namespace lindblad {

/// Fixed operator matrices used throughout; the basis convention puts the
/// ground state at index 0, so sigma_minus = |0><1|.
namespace ops {
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_minus();
Matrix sigma_plus();
Matrix identity(std::size_t n);
} // namespace ops

/// trace(rho^2) for a Hermitian matrix; equals the squared Frobenius norm.
double purity(const Matrix& rho);

/// Validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kEigFloor = -1e-9;

    friend DensityMatrix validate_density(const Matrix& m, double herm_tol,
                                          double trace_tol, double eig_floor);

private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Checks the DensityMatrix invariants and returns the validated state.
/// Throws NotHermitian / TraceNotOne / NotPositive naming the measured defect.
DensityMatrix validate_density(const Matrix& m);
DensityMatrix validate_density(const Matrix& m, double herm_tol, double trace_tol,
                               double eig_floor);

/// Piecewise-constant coefficient table: segment s covers
/// [breakpoints[s], breakpoints[s+1]) and carries one value per column.
struct Schedule {
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> segment_values;

    std::size_t segments() const { return segment_values.size(); }
    double t_min() const { return breakpoints.front(); }
    double t_max() const { return breakpoints.back(); }

    /// Segment containing t (right-continuous; t_max maps to the last
    /// segment). Throws TimeOutOfRange.
    std::size_t segment_index(double t) const;
};

/// One operator of the model with an optional schedule column; index -1
/// means a constant unit coefficient.
struct OperatorTerm {
    Matrix op;
    int coeff_index = -1;
};

/// Lindblad model: H(t) = sum_j f_j(t) H_j and channel operators
/// A_k(t) = c_k(t) A_k with c_k >= 0. Time dependence is piecewise constant.
class LindbladModel {
public:
    LindbladModel(std::size_t dim, std::vector<OperatorTerm> hamiltonian_terms,
                  std::vector<OperatorTerm> lindblad_terms,
                  std::optional<Schedule> schedule = std::nullopt);

    std::size_t dim() const { return dim_; }
    const std::vector<OperatorTerm>& hamiltonian_terms() const { return hamiltonian_terms_; }
    const std::vector<OperatorTerm>& lindblad_terms() const { return lindblad_terms_; }
    const std::optional<Schedule>& schedule() const { return schedule_; }
    bool time_independent() const { return !schedule_.has_value(); }

    /// Throws TimeOutOfRange when t falls outside the schedule domain.
    void require_in_domain(double t) const;
    void require_in_domain(double t_start, double t_end) const;

    double coefficient(int index, double t) const;
    double coefficient_in_segment(int index, std::size_t segment) const;

    Matrix hamiltonian_at(double t) const;
    std::vector<Matrix> lindblad_at(double t) const;
    std::vector<Matrix> lindblad_in_segment(std::size_t segment) const;

private:
    std::size_t dim_;
    std::vector<OperatorTerm> hamiltonian_terms_;
    std::vector<OperatorTerm> lindblad_terms_;
    std::optional<Schedule> schedule_;
};

/// Lidar-Shabani-Alicki classification based on per-operator normality of
/// the schedule-independent channel operators.
struct ChannelClass {
    enum class Kind { unitary, dephasing, general };
    Kind kind = Kind::unitary;
    std::vector<bool> per_operator_normality;
};

ChannelClass classify_channel(const LindbladModel& model);

/// Generator applied to an arbitrary matrix:
/// -i[H(t), x] + sum_k A_k x A_k^dag - (1/2){A_k^dag A_k, x}.
Matrix apply_generator(const LindbladModel& model, const Matrix& x, double t);

/// drho/dt for a validated state; Hermitian and traceless up to round-off.
Matrix apply_lindbladian(const LindbladModel& model, const DensityMatrix& rho, double t);

/// a - (trace(a)/N) I, the Frobenius-minimal scalar shift.
Matrix traceless_shift(const Matrix& a);

} // namespace lindblad
