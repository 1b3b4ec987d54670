#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "lindblad/errors.hpp"

namespace lindblad {

using cplx = std::complex<double>;

/// Dense complex matrix with row-major storage. Values are immutable in
/// practice: operations return new matrices instead of mutating inputs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    cplx trace() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix m);
Matrix operator*(Matrix m, cplx s);
Matrix operator-(Matrix m);

/// Kronecker product with block layout (a_ij * b).
Matrix kron(const Matrix& a, const Matrix& b);

/// sqrt(sum |entry|^2) = sqrt(trace(m^dag m)).
double frobenius_norm(const Matrix& m);

/// sum |entry|^2, exact for integer entries (no sqrt round trip).
double frobenius_norm_sq(const Matrix& m);

/// max_ij |m_ij - conj(m_ji)|; 0 for exactly Hermitian matrices.
double hermiticity_defect(const Matrix& m);

/// (m + m^dag)/2.
Matrix hermitize(const Matrix& m);

/// Eigenvalue digest of a Hermitian matrix.
struct SpectralSummary {
    std::vector<double> eigenvalues; ///< ascending
    double max_abs = 0.0;            ///< max |eigenvalue|
    double gap = 0.0;                ///< last - first
};

/// Full Hermitian eigendecomposition; column k of `vectors` pairs with
/// eigenvalues[k].
struct EigenSystem {
    std::vector<double> eigenvalues; ///< ascending
    Matrix vectors;                  ///< unitary
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. The input must
/// be Hermitian within 1e-10 (max entry defect); it is symmetrized before
/// the sweeps so that integrator round-off cannot trip spectral calls.
/// Throws NotHermitian or, after 100 sweeps, NoConvergence.
EigenSystem hermitian_eigensystem(const Matrix& m);
SpectralSummary hermitian_eigs(const Matrix& m);

/// Largest singular value, via the top eigenvalue of m^dag m.
double spectral_norm(const Matrix& m);

/// Eigendecomposition of a normal matrix, obtained by diagonalizing the
/// Hermitian part and re-diagonalizing the skew part inside degenerate
/// eigenspaces (degeneracy tolerance 1e-8).
struct NormalEigenSystem {
    std::vector<cplx> eigenvalues; ///< ordered by (Re, Im) ascending
    Matrix vectors;                ///< unitary
};

/// Throws NotNormal when ||[a, a^dag]||_F > 1e-10.
NormalEigenSystem normal_eigensystem(const Matrix& a);

struct KernelVector {
    std::vector<cplx> vector; ///< unit norm
    double residual = 0.0;    ///< ||m v||
};

/// Unit vector minimizing ||m v||: the eigenvector of the smallest
/// eigenvalue of m^dag m.
KernelVector kernel_vector(const Matrix& m);

// Vector helpers shared by the Liouville-space code paths.
double vector_norm(const std::vector<cplx>& v);
std::vector<cplx> matvec(const Matrix& m, const std::vector<cplx>& v);
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace lindblad
