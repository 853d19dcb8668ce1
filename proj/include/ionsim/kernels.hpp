#pragma once
#include <vector>

#include "ionsim/matrix.hpp"

// Compute kernels exist in two variants: *_serial is the reference
// implementation, *_omp partitions independent output rows/samples across
// threads while running the identical scalar loop per element, so the two
// produce bitwise-equal results. The unsuffixed names dispatch (OpenMP when
// compiled in and the problem is large enough to pay for it).
namespace ionsim::kern {

// C = A * B
void gemm_serial(const CMatrix& A, const CMatrix& B, CMatrix& C);
void gemm_omp(const CMatrix& A, const CMatrix& B, CMatrix& C);
void gemm(const CMatrix& A, const CMatrix& B, CMatrix& C);
CMatrix matmul(const CMatrix& A, const CMatrix& B);

// y = A x
void matvec_serial(const CMatrix& A, const cplx* x, cplx* y);
void matvec_omp(const CMatrix& A, const cplx* x, cplx* y);
void matvec(const CMatrix& A, const cplx* x, cplx* y);
CVector matvec(const CMatrix& A, const CVector& x);

// y = A† x without forming the adjoint
CVector matvec_conjtrans(const CMatrix& A, const CVector& x);

// pe[s] = sum_{i < eblock} |sum_j M(i,j) e^{-i w_j t_s} c_j|^2  (parallel over samples)
std::vector<double> pe_phase_grid_serial(const CMatrix& M, const std::vector<double>& w,
                                         const CVector& c, const std::vector<double>& times,
                                         int eblock);
std::vector<double> pe_phase_grid_omp(const CMatrix& M, const std::vector<double>& w,
                                      const CVector& c, const std::vector<double>& times,
                                      int eblock);
std::vector<double> pe_phase_grid(const CMatrix& M, const std::vector<double>& w,
                                  const CVector& c, const std::vector<double>& times,
                                  int eblock);

// out = M (e^{-i w t} .* c), all rows
void reconstruct_state(const CMatrix& M, const std::vector<double>& w, const CVector& c,
                       double t, CVector& out);

// psi <- exp(-i s H) psi via Taylor summation; intended for s*||H|| <= 0.1
void taylor_exp_apply(const CMatrix& H, double s, CVector& psi);

bool openmp_enabled();

}  // namespace ionsim::kern
