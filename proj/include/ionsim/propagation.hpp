#pragma once
#include <string>
#include <vector>

#include "ionsim/models.hpp"

namespace ionsim {

// normalized state on the joint space, same basis ordering as OperatorMatrix
struct StateVector {
  int dim = 0;
  CVector a;
};

StateVector make_state(CVector amps);  // verifies the norm to 1e-12
StateVector basis_state(const FockDim& dim, int spin, int n);
// coherent motional state with real amplitude x and internal |e>, renormalized
// in the truncated space
StateVector coherent_e(const FockDim& dim, double x);
// parse "e0" | "g0" | "e:n" | "g:n" | "ecoh:x"
StateVector init_state(const std::string& name, const FockDim& dim);

double pe_observable(const StateVector& psi);

struct TimeSeries {
  std::string model_tag;
  ModelParams params;
  FockDim dim;
  std::vector<double> t;
  std::vector<double> pe;
};

// U(t) = exp(-i H t) from the spectral factorization; unitary flag verified
OperatorMatrix propagator(const OperatorMatrix& H, double t);

// one factorization, then per-sample phase reconstruction of P_e
TimeSeries evolve_series(const OperatorMatrix& H, const StateVector& psi0,
                         const std::vector<double>& times);

// piecewise-constant midpoint stepping for the lab-frame Hamiltonian:
// psi <- exp(-i H(t + s/2) s) psi, substepping so every grid point is hit
// exactly; requires step * (nu n_max + omega_a/2 + 2 omega) <= 0.1
TimeSeries evolve_timedep(const ModelParams& p, const StateVector& psi0,
                          const std::vector<double>& times, double step, const FockDim& dim);

struct ConvergenceReport {
  int n_max_lo = 0;
  int n_max_hi = 0;
  double sup_diff = 0.0;
  bool pass = false;
};

// compares P_e at n_max against 2*n_max under the exact model; pass when the
// sup-norm difference is <= 1e-6
ConvergenceReport convergence_check(const ModelParams& p, const FockDim& dim,
                                    const std::vector<double>& times,
                                    const std::string& init = "e0");

std::vector<double> uniform_grid(double tmax, int samples);

}  // namespace ionsim
