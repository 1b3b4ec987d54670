#include "lindblad/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lindblad {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << op << ": shape mismatch (" << a.rows() << "x" << a.cols()
            << " vs " << b.rows() << "x" << b.cols() << ")";
        throw DimMismatch(msg.str());
    }
}

void require_square(const Matrix& m, const char* op) {
    if (!m.is_square() || m.empty()) {
        std::ostringstream msg;
        msg << op << ": requires a nonempty square matrix, got "
            << m.rows() << "x" << m.cols();
        throw DimMismatch(msg.str());
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw DimMismatch("Matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimMismatch("Matrix: dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw DimMismatch("Matrix: entry count does not equal rows*cols");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    if (r == 0) throw DimMismatch("Matrix::from_rows: no rows");
    const std::size_t c = rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimMismatch("Matrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (const cplx& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

Matrix Matrix::conjugate() const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
}

cplx Matrix::trace() const {
    require_square(*this, "trace");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool Matrix::all_finite() const {
    for (const cplx& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (cplx& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
Matrix operator*(cplx s, Matrix m) { m *= s; return m; }
Matrix operator*(Matrix m, cplx s) { m *= s; return m; }
Matrix operator-(Matrix m) { m *= cplx(-1.0, 0.0); return m; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "operator*: inner dimensions differ (" << a.rows() << "x" << a.cols()
            << " times " << b.rows() << "x" << b.cols() << ")";
        throw DimMismatch(msg.str());
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

double frobenius_norm(const Matrix& m) { return std::sqrt(frobenius_norm_sq(m)); }

double frobenius_norm_sq(const Matrix& m) {
    double sum = 0.0;
    for (const cplx& v : m.entries()) sum += std::norm(v);
    return sum;
}

double hermiticity_defect(const Matrix& m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    double defect = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    return defect;
}

Matrix hermitize(const Matrix& m) {
    require_square(m, "hermitize");
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

namespace {

constexpr double kHermTol = 1e-10;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p,q). The 2x2 block is phased
// to a real symmetric problem and rotated with the classic symmetric-Schur
// parameters.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double h = std::abs(apq);
    if (h == 0.0) return;
    const cplx phase = apq / h; // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * h);
    double t;
    if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // 2x2 unitary J = [[c, s],[-s e^{-i phi}, c e^{-i phi}]] * phase fix:
    // columns (p,q) mix as x_p' = c x_p - s conj(phase) x_q,
    //                      x_q' = s phase x_p + c x_q.
    const cplx jpp = c;
    const cplx jpq = s * phase;
    const cplx jqp = -s * std::conj(phase);
    const cplx jqq = c;

    const std::size_t n = a.rows();
    // A <- J^dag A J ; apply the column transform, then the row transform.
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

} // namespace

EigenSystem hermitian_eigensystem(const Matrix& m) {
    require_square(m, "hermitian_eigensystem");
    if (!m.all_finite()) throw Error("hermitian_eigensystem: non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > kHermTol) {
        std::ostringstream msg;
        msg << "hermitian_eigensystem: matrix is not Hermitian (max entry defect "
            << defect << " > " << kHermTol << ")";
        throw NotHermitian(msg.str());
    }

    const std::size_t n = m.rows();
    Matrix a = hermitize(m);
    Matrix v = Matrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double target = std::max(1e-14, static_cast<double>(n) * 1e-15) * scale;

    bool converged = off_diagonal_norm(a) <= target;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, v, p, q);
        converged = off_diagonal_norm(a) <= target;
    }
    if (!converged) {
        throw NoConvergence("hermitian_eigensystem: Jacobi sweeps exceeded the cap of 100");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem sys;
    sys.eigenvalues.resize(n);
    sys.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sys.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) sys.vectors(i, k) = v(i, order[k]);
    }
    return sys;
}

SpectralSummary hermitian_eigs(const Matrix& m) {
    EigenSystem sys = hermitian_eigensystem(m);
    SpectralSummary out;
    out.eigenvalues = std::move(sys.eigenvalues);
    out.max_abs = 0.0;
    for (double e : out.eigenvalues) out.max_abs = std::max(out.max_abs, std::abs(e));
    out.gap = out.eigenvalues.back() - out.eigenvalues.front();
    return out;
}

NormalEigenSystem normal_eigensystem(const Matrix& a) {
    require_square(a, "normal_eigensystem");
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    const double defect = frobenius_norm(comm);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "normal_eigensystem: operator is not normal (||[a,a^dag]||_F = "
            << defect << ")";
        throw NotNormal(msg.str());
    }

    const std::size_t n = a.rows();
    const Matrix re_part = hermitize(a);
    Matrix im_part(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            im_part(i, j) = (a(i, j) - std::conj(a(j, i))) / cplx(0.0, 2.0);

    EigenSystem base = hermitian_eigensystem(re_part);
    Matrix v = std::move(base.vectors);

    NormalEigenSystem out;
    out.eigenvalues.resize(n);

    constexpr double kDegenerateTol = 1e-8;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && base.eigenvalues[end] - base.eigenvalues[end - 1] <= kDegenerateTol) {
            ++end;
        }
        const std::size_t width = end - start;
        if (width == 1) {
            std::vector<cplx> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = v(i, start);
            out.eigenvalues[start] =
                cplx(base.eigenvalues[start], inner(col, matvec(im_part, col)).real());
        } else {
            // Project the skew part onto the degenerate block and rotate the
            // block basis to its eigenvectors.
            Matrix block(width, width);
            for (std::size_t c1 = 0; c1 < width; ++c1) {
                std::vector<cplx> col(n);
                for (std::size_t i = 0; i < n; ++i) col[i] = v(i, start + c1);
                const std::vector<cplx> image = matvec(im_part, col);
                for (std::size_t c0 = 0; c0 < width; ++c0) {
                    std::vector<cplx> row(n);
                    for (std::size_t i = 0; i < n; ++i) row[i] = v(i, start + c0);
                    block(c0, c1) = inner(row, image);
                }
            }
            const EigenSystem sub = hermitian_eigensystem(block);
            Matrix rotated(n, width);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t c = 0; c < width; ++c) {
                    cplx acc = 0.0;
                    for (std::size_t c1 = 0; c1 < width; ++c1) {
                        acc += v(i, start + c1) * sub.vectors(c1, c);
                    }
                    rotated(i, c) = acc;
                }
            }
            for (std::size_t c = 0; c < width; ++c) {
                for (std::size_t i = 0; i < n; ++i) v(i, start + c) = rotated(i, c);
                out.eigenvalues[start + c] = cplx(base.eigenvalues[start + c], sub.eigenvalues[c]);
            }
        }
        start = end;
    }

    out.vectors = std::move(v);
    return out;
}

double spectral_norm(const Matrix& m) {
    require_square(m, "spectral_norm");
    const Matrix gram = m.adjoint() * m;
    const SpectralSummary s = hermitian_eigs(gram);
    return std::sqrt(std::max(0.0, s.eigenvalues.back()));
}

KernelVector kernel_vector(const Matrix& m) {
    require_square(m, "kernel_vector");
    const Matrix gram = m.adjoint() * m;
    const EigenSystem sys = hermitian_eigensystem(gram);

    KernelVector out;
    out.vector.resize(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out.vector[i] = sys.vectors(i, 0);
    const double nrm = vector_norm(out.vector);
    for (cplx& v : out.vector) v /= nrm;
    out.residual = vector_norm(matvec(m, out.vector));
    return out;
}

double vector_norm(const std::vector<cplx>& v) {
    double sum = 0.0;
    for (const cplx& x : v) sum += std::norm(x);
    return std::sqrt(sum);
}

std::vector<cplx> matvec(const Matrix& m, const std::vector<cplx>& v) {
    if (m.cols() != v.size()) throw DimMismatch("matvec: dimension mismatch");
    std::vector<cplx> out(m.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw DimMismatch("inner: length mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

} // namespace lindblad
