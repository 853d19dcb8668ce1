#pragma once
#include <vector>

#include "ionsim/models.hpp"
#include "ionsim/propagation.hpp"

namespace ionsim {

// closed-form P_e under the resonant sideband-k interaction Hamiltonian: the
// coupling splits the basis into independent 2x2 pairs |e,n> <-> |g,n+k>
// (roles swapped for k < 0), each rotating at its own rate; unpaired excited
// states stay frozen. Works for any initial state.
TimeSeries lir_pe(const ModelParams& p, const StateVector& psi0,
                  const std::vector<double>& times, const FockDim& dim);

// closed-form P_e for the Jaynes-Cummings form: manifolds {|e,M-1>, |g,M>}
// rotate at Rabi frequency sqrt(((2 omega - nu)/2)^2 + (eta nu / 2)^2 M);
// |g,0> is inert and the top excited state is frozen by truncation.
TimeSeries mir_pe(const ModelParams& p, const StateVector& psi0,
                  const std::vector<double>& times, const FockDim& dim);

// P_e from the dispersive effective model: transform the initial state with
// U2 U1 R, evolve under the effective Hamiltonian (diagonal phases when
// delta = 0, spectral factorization otherwise), transform back, and read off
// the excited-state population. cc_override substitutes explicit coupling
// constants (also used for the transform angles) in place of the derived ones.
TimeSeries dispersive_pe(const ModelParams& p, const StateVector& psi0,
                         const std::vector<double>& times, const FockDim& dim,
                         const CouplingConstants* cc_override = nullptr);

// dispersive Hamiltonian specialized to the first sidebands delta = +/- nu,
// for downstream rotating-wave analysis. Only meaningful at low intensity
// (omega < nu); no further approximation is applied here.
OperatorMatrix sideband_model(const ModelParams& p, const FockDim& dim);

}  // namespace ionsim
