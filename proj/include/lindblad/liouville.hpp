#pragma once

#include <vector>

#include "lindblad/model.hpp"

namespace lindblad {

/// Density vector |r> with the fixed row-major convention
/// amplitudes[i*N + j] = rho_ij, so <r|r> = trace(rho^dag rho).
struct VecState {
    std::size_t dim = 0;
    std::vector<cplx> amplitudes;
};

VecState vectorize(const DensityMatrix& rho);
std::vector<cplx> vectorize(const Matrix& m);
Matrix devectorize(const VecState& r);
Matrix devectorize(const std::vector<cplx>& amplitudes, std::size_t dim);

/// Liouville-space generator L (d|r>/dt = L|r>) and the Hamiltonian
/// superoperator H_r = i L.
struct Superoperator {
    std::size_t dim = 0;
    Matrix generator;
    Matrix hr;
};

/// With the row-major convention:
/// L = -i (H x I - I x H^T)
///     + sum_k [ A_k x conj(A_k) - (1/2)(A_k^dag A_k) x I - (1/2) I x (A_k^dag A_k)^T ].
Superoperator build_superoperator(const LindbladModel& model, double t);
Superoperator build_superoperator_for_segment(const LindbladModel& model,
                                              const std::vector<Matrix>& lindblad_ops);

/// H_r - H_r^dag together with the spectrum of the Hermitian matrix
/// -i (H_r - H_r^dag); independent of every Hamiltonian term.
struct SkewPart {
    Matrix matrix;
    SpectralSummary spectrum;
};

SkewPart skew_part(const Superoperator& s);

/// ||H_r - H_r^dag||_sp = max |eigenvalue| of -i(H_r - H_r^dag).
double skew_spectral_norm(const SkewPart& sk);

/// Largest signed eigenvalue of -i(H_r - H_r^dag); 0 for dephasing channels.
double max_growth_rate(const SkewPart& sk);

} // namespace lindblad
