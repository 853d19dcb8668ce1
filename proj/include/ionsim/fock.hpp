#pragma once
#include <vector>

#include "ionsim/matrix.hpp"

namespace ionsim {

// truncated boson space |0>..|n_max>; the top `guard` levels are excluded from
// exactness checks because truncation breaks operator identities there
struct FockDim {
  int n_max = 40;
  int guard = 4;

  int nb() const { return n_max + 1; }  // boson dimension
  int joint() const { return 2 * (n_max + 1); }
};

void validate(const FockDim& dim);  // throws precondition_error

// basis index: spin-major, spin 0 = |e>, spin 1 = |g>
inline int joint_index(int spin, int n, const FockDim& dim) { return spin * dim.nb() + n; }
inline int fock_of(int idx, const FockDim& dim) { return idx % dim.nb(); }
inline bool interior(int idx, const FockDim& dim) {
  return fock_of(idx, dim) <= dim.n_max - dim.guard;
}

// max |entry| over rows and columns whose Fock part lies below the guard band
double max_abs_interior(const CMatrix& m, const FockDim& dim);
double max_abs_diff_interior(const CMatrix& x, const CMatrix& y, const FockDim& dim);

// operator on the joint space with verified structure flags
struct OperatorMatrix {
  CMatrix m;
  bool hermitian = false;
  bool unitary = false;
};

double unitarity_residual(const CMatrix& m);  // max |M†M - I|
double unitarity_residual_interior(const CMatrix& m, const FockDim& dim);

struct LadderOps {
  OperatorMatrix a, a_dag, n_op;
};
LadderOps ladder_ops(const FockDim& dim);

struct PauliOps {
  OperatorMatrix sz, sp, sm, sx;
};
PauliOps pauli_ops(const FockDim& dim);

// associated Laguerre L_n^{(k)}(x) by the three-term recurrence in n
double laguerre_assoc(int n, int k, double x);
// the whole column L_0..L_{n_top} for fixed k, x
std::vector<double> laguerre_column(int n_top, int k, double x);

// D(i eta) = e^{i eta (a + a†)} from closed-form elements on the boson factor
CMatrix displacement_boson(double eta, int nb);
// joint-space D(i eta) ⊗ spin identity; the unitary flag is set only when the
// interior-block check at this dim's guard passes
OperatorMatrix displacement_matrix(double eta, const FockDim& dim);
// independent check: exponential power series in a space enlarged by 2*guard
// levels, then truncated back
OperatorMatrix displacement_series_oracle(double eta, const FockDim& dim);

}  // namespace ionsim
