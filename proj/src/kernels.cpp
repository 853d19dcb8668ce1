#include "ionsim/kernels.hpp"

#include "ionsim/errors.hpp"

namespace ionsim::kern {

namespace {
// below this dimension the OpenMP fork/join overhead outweighs the work
constexpr int kParallelDim = 48;
constexpr int kParallelSamples = 8;
}  // namespace

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

static void gemm_rows(const CMatrix& A, const CMatrix& B, CMatrix& C, int i) {
  const int n = A.n;
  cplx* crow = &C.a[static_cast<size_t>(i) * n];
  for (int k = 0; k < n; ++k) {
    const cplx aik = A(i, k);
    if (aik == cplx(0.0, 0.0)) continue;
    const cplx* brow = &B.a[static_cast<size_t>(k) * n];
    for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
  }
}

void gemm_serial(const CMatrix& A, const CMatrix& B, CMatrix& C) {
  C = CMatrix(A.n);
  for (int i = 0; i < A.n; ++i) gemm_rows(A, B, C, i);
}

void gemm_omp(const CMatrix& A, const CMatrix& B, CMatrix& C) {
  C = CMatrix(A.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < A.n; ++i) gemm_rows(A, B, C, i);
}

void gemm(const CMatrix& A, const CMatrix& B, CMatrix& C) {
  if (openmp_enabled() && A.n >= kParallelDim)
    gemm_omp(A, B, C);
  else
    gemm_serial(A, B, C);
}

CMatrix matmul(const CMatrix& A, const CMatrix& B) {
  CMatrix C;
  gemm(A, B, C);
  return C;
}

static cplx row_dot(const CMatrix& A, const cplx* x, int i) {
  const int n = A.n;
  const cplx* arow = &A.a[static_cast<size_t>(i) * n];
  cplx acc(0.0, 0.0);
  for (int j = 0; j < n; ++j) acc += arow[j] * x[j];
  return acc;
}

void matvec_serial(const CMatrix& A, const cplx* x, cplx* y) {
  for (int i = 0; i < A.n; ++i) y[i] = row_dot(A, x, i);
}

void matvec_omp(const CMatrix& A, const cplx* x, cplx* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < A.n; ++i) y[i] = row_dot(A, x, i);
}

void matvec(const CMatrix& A, const cplx* x, cplx* y) {
  if (openmp_enabled() && A.n >= kParallelDim)
    matvec_omp(A, x, y);
  else
    matvec_serial(A, x, y);
}

CVector matvec(const CMatrix& A, const CVector& x) {
  CVector y(A.n);
  matvec(A, x.data(), y.data());
  return y;
}

CVector matvec_conjtrans(const CMatrix& A, const CVector& x) {
  const int n = A.n;
  CVector y(n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    const cplx xi = x[i];
    const cplx* arow = &A.a[static_cast<size_t>(i) * n];
    for (int j = 0; j < n; ++j) y[j] += std::conj(arow[j]) * xi;
  }
  return y;
}

static double pe_at_sample(const CMatrix& M, const std::vector<double>& w, const CVector& c,
                           double t, int eblock, CVector& phase_buf) {
  const int n = M.n;
  for (int j = 0; j < n; ++j) phase_buf[j] = std::polar(1.0, -w[j] * t) * c[j];
  double s = 0.0;
  for (int i = 0; i < eblock; ++i) s += std::norm(row_dot(M, phase_buf.data(), i));
  return s;
}

std::vector<double> pe_phase_grid_serial(const CMatrix& M, const std::vector<double>& w,
                                         const CVector& c, const std::vector<double>& times,
                                         int eblock) {
  std::vector<double> pe(times.size());
  CVector buf(M.n);
  for (size_t s = 0; s < times.size(); ++s) pe[s] = pe_at_sample(M, w, c, times[s], eblock, buf);
  return pe;
}

std::vector<double> pe_phase_grid_omp(const CMatrix& M, const std::vector<double>& w,
                                      const CVector& c, const std::vector<double>& times,
                                      int eblock) {
  std::vector<double> pe(times.size());
#ifdef _OPENMP
#pragma omp parallel
  {
    CVector buf(M.n);
#pragma omp for schedule(static)
    for (size_t s = 0; s < times.size(); ++s)
      pe[s] = pe_at_sample(M, w, c, times[s], eblock, buf);
  }
#else
  CVector buf(M.n);
  for (size_t s = 0; s < times.size(); ++s) pe[s] = pe_at_sample(M, w, c, times[s], eblock, buf);
#endif
  return pe;
}

std::vector<double> pe_phase_grid(const CMatrix& M, const std::vector<double>& w, const CVector& c,
                                  const std::vector<double>& times, int eblock) {
  if (openmp_enabled() && times.size() >= kParallelSamples)
    return pe_phase_grid_omp(M, w, c, times, eblock);
  return pe_phase_grid_serial(M, w, c, times, eblock);
}

void reconstruct_state(const CMatrix& M, const std::vector<double>& w, const CVector& c, double t,
                       CVector& out) {
  const int n = M.n;
  CVector buf(n);
  for (int j = 0; j < n; ++j) buf[j] = std::polar(1.0, -w[j] * t) * c[j];
  out.resize(n);
  matvec(M, buf.data(), out.data());
}

void taylor_exp_apply(const CMatrix& H, double s, CVector& psi) {
  const cplx mis(0.0, -s);
  CVector term = psi;
  CVector tmp(psi.size());
  for (int k = 1; k <= 64; ++k) {
    matvec(H, term.data(), tmp.data());
    const cplx f = mis / static_cast<double>(k);
    double mx = 0.0;
    for (size_t i = 0; i < psi.size(); ++i) {
      term[i] = f * tmp[i];
      psi[i] += term[i];
      mx = std::max(mx, std::abs(term[i]));
    }
    if (mx < 1e-17) return;
  }
  throw numerical_error("taylor_exp_apply: no convergence in 64 terms (step too large?)");
}

}  // namespace ionsim::kern
