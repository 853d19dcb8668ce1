#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace ionsim {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// dense square complex matrix, row-major
struct CMatrix {
  int n = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  explicit CMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static CMatrix identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline CMatrix dagger(const CMatrix& m) {
  CMatrix r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

inline double max_abs(const CMatrix& m) {
  double mx = 0.0;
  for (const cplx& v : m.a) mx = std::max(mx, std::abs(v));
  return mx;
}

inline double max_abs_diff(const CMatrix& x, const CMatrix& y) {
  double mx = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) mx = std::max(mx, std::abs(x.a[i] - y.a[i]));
  return mx;
}

inline double herm_residual(const CMatrix& m) {
  double mx = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j) mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
  return mx;
}

inline double norm2(const CVector& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace ionsim
