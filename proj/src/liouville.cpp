#include "lindblad/liouville.hpp"

#include <cmath>
#include <sstream>

namespace lindblad {

VecState vectorize(const DensityMatrix& rho) {
    VecState r;
    r.dim = rho.dim();
    r.amplitudes = rho.matrix().entries();
    return r;
}

std::vector<cplx> vectorize(const Matrix& m) {
    if (!m.is_square()) throw DimMismatch("vectorize: requires a square matrix");
    return m.entries();
}

Matrix devectorize(const std::vector<cplx>& amplitudes, std::size_t dim) {
    if (amplitudes.size() != dim * dim) {
        std::ostringstream msg;
        msg << "devectorize: expected " << dim * dim << " amplitudes, got "
            << amplitudes.size();
        throw DimMismatch(msg.str());
    }
    return Matrix(dim, dim, amplitudes);
}

Matrix devectorize(const VecState& r) { return devectorize(r.amplitudes, r.dim); }

Superoperator build_superoperator_for_segment(const LindbladModel& model,
                                              const std::vector<Matrix>& lindblad_ops) {
    const std::size_t n = model.dim();
    const Matrix eye = Matrix::identity(n);

    Matrix gen(n * n, n * n);
    for (const Matrix& a : lindblad_ops) {
        const Matrix gram = a.adjoint() * a;
        gen += kron(a, a.conjugate());
        gen -= 0.5 * kron(gram, eye);
        gen -= 0.5 * kron(eye, gram.transpose());
    }
    Superoperator s;
    s.dim = n;
    s.hr = cplx(0.0, 1.0) * gen;
    s.generator = std::move(gen);
    return s;
}

Superoperator build_superoperator(const LindbladModel& model, double t) {
    model.require_in_domain(t);
    Superoperator s = build_superoperator_for_segment(model, model.lindblad_at(t));
    if (!model.hamiltonian_terms().empty()) {
        const std::size_t n = model.dim();
        const Matrix eye = Matrix::identity(n);
        const Matrix h = model.hamiltonian_at(t);
        s.generator += cplx(0.0, -1.0) * (kron(h, eye) - kron(eye, h.transpose()));
    }
    s.hr = cplx(0.0, 1.0) * s.generator;
    return s;
}

SkewPart skew_part(const Superoperator& s) {
    SkewPart sk;
    sk.matrix = s.hr - s.hr.adjoint();
    sk.spectrum = hermitian_eigs(cplx(0.0, -1.0) * sk.matrix);
    return sk;
}

double skew_spectral_norm(const SkewPart& sk) { return sk.spectrum.max_abs; }

double max_growth_rate(const SkewPart& sk) { return sk.spectrum.eigenvalues.back(); }

} // namespace lindblad
