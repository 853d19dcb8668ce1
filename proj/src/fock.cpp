#include "ionsim/fock.hpp"

#include <cmath>
#include <string>

#include "ionsim/errors.hpp"
#include "ionsim/kernels.hpp"

namespace ionsim {

void validate(const FockDim& dim) {
  if (dim.n_max < 2) throw precondition_error("FockDim: n_max must be >= 2");
  if (dim.guard < 2) throw precondition_error("FockDim: guard must be >= 2");
  if (dim.guard >= dim.n_max) throw precondition_error("FockDim: guard must be < n_max");
}

double max_abs_interior(const CMatrix& m, const FockDim& dim) {
  double mx = 0.0;
  for (int i = 0; i < m.n; ++i) {
    if (!interior(i, dim)) continue;
    for (int j = 0; j < m.n; ++j)
      if (interior(j, dim)) mx = std::max(mx, std::abs(m(i, j)));
  }
  return mx;
}

double max_abs_diff_interior(const CMatrix& x, const CMatrix& y, const FockDim& dim) {
  double mx = 0.0;
  for (int i = 0; i < x.n; ++i) {
    if (!interior(i, dim)) continue;
    for (int j = 0; j < x.n; ++j)
      if (interior(j, dim)) mx = std::max(mx, std::abs(x(i, j) - y(i, j)));
  }
  return mx;
}

double unitarity_residual(const CMatrix& m) {
  CMatrix g = kern::matmul(dagger(m), m);
  for (int i = 0; i < g.n; ++i) g(i, i) -= 1.0;
  return max_abs(g);
}

double unitarity_residual_interior(const CMatrix& m, const FockDim& dim) {
  CMatrix g = kern::matmul(dagger(m), m);
  for (int i = 0; i < g.n; ++i) g(i, i) -= 1.0;
  return max_abs_interior(g, dim);
}

namespace {

OperatorMatrix finish(CMatrix m, const FockDim& dim, bool check_unitary_interior = false) {
  OperatorMatrix op{std::move(m)};
  op.hermitian = herm_residual(op.m) <= 1e-12 * std::max(1.0, max_abs(op.m));
  if (check_unitary_interior)
    op.unitary = unitarity_residual_interior(op.m, dim) <= 1e-10;
  else
    op.unitary = unitarity_residual(op.m) <= 1e-10;
  return op;
}

}  // namespace

LadderOps ladder_ops(const FockDim& dim) {
  validate(dim);
  const int nb = dim.nb();
  CMatrix a(dim.joint()), nop(dim.joint());
  for (int s = 0; s < 2; ++s) {
    for (int n = 1; n <= dim.n_max; ++n)
      a(joint_index(s, n - 1, dim), joint_index(s, n, dim)) = std::sqrt(double(n));
    for (int n = 0; n < nb; ++n) nop(joint_index(s, n, dim), joint_index(s, n, dim)) = double(n);
  }
  LadderOps ops;
  ops.a.m = a;
  ops.a_dag.m = dagger(a);
  ops.n_op = finish(std::move(nop), dim);
  return ops;
}

PauliOps pauli_ops(const FockDim& dim) {
  validate(dim);
  const int nb = dim.nb();
  CMatrix sz(dim.joint()), sp(dim.joint()), sx(dim.joint());
  for (int n = 0; n < nb; ++n) {
    sz(joint_index(0, n, dim), joint_index(0, n, dim)) = 1.0;
    sz(joint_index(1, n, dim), joint_index(1, n, dim)) = -1.0;
    sp(joint_index(0, n, dim), joint_index(1, n, dim)) = 1.0;
    sx(joint_index(0, n, dim), joint_index(1, n, dim)) = 1.0;
    sx(joint_index(1, n, dim), joint_index(0, n, dim)) = 1.0;
  }
  PauliOps ops;
  ops.sz = finish(std::move(sz), dim);
  ops.sm.m = dagger(sp);
  ops.sp.m = std::move(sp);
  ops.sx = finish(std::move(sx), dim);
  return ops;
}

double laguerre_assoc(int n, int k, double x) {
  if (n < 0 || k < 0 || x < 0.0)
    throw precondition_error("laguerre_assoc: need n >= 0, k >= 0, x >= 0");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + k - x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + k - x) * l - (m + k) * lm1) / (m + 1.0);
    lm1 = l;
    l = next;
  }
  return l;
}

std::vector<double> laguerre_column(int n_top, int k, double x) {
  if (n_top < 0 || k < 0 || x < 0.0)
    throw precondition_error("laguerre_column: need n_top >= 0, k >= 0, x >= 0");
  std::vector<double> out(n_top + 1);
  out[0] = 1.0;
  if (n_top == 0) return out;
  out[1] = 1.0 + k - x;
  for (int m = 1; m < n_top; ++m)
    out[m + 1] = ((2.0 * m + 1.0 + k - x) * out[m] - (m + k) * out[m - 1]) / (m + 1.0);
  return out;
}

CMatrix displacement_boson(double eta, int nb) {
  // element for m >= n: sqrt(n!/m!) (i eta)^{m-n} e^{-eta^2/2} L_n^{(m-n)}(eta^2);
  // for a purely imaginary argument the matrix is complex symmetric, so the
  // upper triangle is the mirror of the lower one (no conjugation)
  const double x = eta * eta;
  const double pref = std::exp(-x / 2.0);
  // i^d cycle
  const cplx icycle[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  CMatrix d(nb);
  double eta_pow = 1.0;
  for (int off = 0; off < nb; ++off) {  // off = m - n
    const std::vector<double> lag = laguerre_column(nb - 1 - off, off, x);
    const cplx phase = icycle[off % 4] * eta_pow;
    double fact_ratio = 1.0;  // n!/(n+off)! at current n
    for (int j = 1; j <= off; ++j) fact_ratio /= double(j);
    for (int n = 0; n + off < nb; ++n) {
      if (n > 0) fact_ratio *= double(n) / double(n + off);
      const cplx v = std::sqrt(fact_ratio) * phase * pref * lag[n];
      d(n + off, n) = v;
      d(n, n + off) = v;
    }
    eta_pow *= eta;
  }
  return d;
}

namespace {

CMatrix boson_to_joint(const CMatrix& b, const FockDim& dim) {
  CMatrix m(dim.joint());
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j)
        m(joint_index(s, i, dim), joint_index(s, j, dim)) = b(i, j);
  return m;
}

}  // namespace

OperatorMatrix displacement_matrix(double eta, const FockDim& dim) {
  validate(dim);
  return finish(boson_to_joint(displacement_boson(eta, dim.nb()), dim), dim,
                /*check_unitary_interior=*/true);
}

OperatorMatrix displacement_series_oracle(double eta, const FockDim& dim) {
  validate(dim);
  const int nb_big = dim.nb() + 2 * dim.guard;
  // generator i eta (a + a†) in the enlarged space
  CMatrix t(nb_big);
  for (int n = 1; n < nb_big; ++n) {
    const cplx v = cplx(0.0, eta) * std::sqrt(double(n));
    t(n - 1, n) = v;
    t(n, n - 1) = v;
  }
  CMatrix sum = CMatrix::identity(nb_big);
  CMatrix term = CMatrix::identity(nb_big);
  bool converged = false;
  for (int k = 1; k <= 500; ++k) {
    CMatrix next = kern::matmul(t, term);
    const double inv = 1.0 / double(k);
    for (auto& v : next.a) v *= inv;
    term = std::move(next);
    for (size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += term.a[i];
    if (max_abs(term) < 1e-16) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw numerical_error("displacement_series_oracle: series did not converge in 500 terms");
  CMatrix back(dim.nb());
  for (int i = 0; i < dim.nb(); ++i)
    for (int j = 0; j < dim.nb(); ++j) back(i, j) = sum(i, j);
  return finish(boson_to_joint(back, dim), dim, /*check_unitary_interior=*/true);
}

}  // namespace ionsim
