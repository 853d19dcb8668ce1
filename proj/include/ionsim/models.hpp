#pragma once
#include <string>
#include <utility>
#include <vector>

#include "ionsim/fock.hpp"

namespace ionsim {

// physical parameters; nu sets the time unit. Detuning is either an integer
// sideband index k (delta = k nu) or a free real delta, never both.
struct ModelParams {
  double nu = 1.0;
  double omega = 0.0;
  double eta = 0.0;
  bool has_k = true;
  int k = 0;
  double delta_value = 0.0;
  bool has_omega_a = false;
  double omega_a = 0.0;
  bool has_omega_l = false;
  double omega_l = 0.0;

  double delta() const { return has_k ? k * nu : delta_value; }
};

void validate(const ModelParams& p);  // throws config_error

struct CouplingConstants {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double chi_ion = 0.0;
  double kappa = 0.0;
};

enum class Regime { high, low };

// xi1 = eta nu / (2(nu + 2 omega)), xi2 = eta nu / (2(2 omega - nu)),
// chi_ion = 2 eta^2 nu^2 omega / (4 omega^2 - nu^2), kappa = delta eta nu^2 / (4 omega^2 - nu^2);
// rejects the resonance pole |4 omega^2 - nu^2| < 1e-9 nu^2
CouplingConstants coupling_constants(const ModelParams& p);

// high: eta^2 nu^2 / (2 omega); low: -2 eta^2 omega
double chi_asymptotic(const ModelParams& p, Regime regime);

// nu n + (delta/2) sz + omega (s+ D(i eta) + s- D†(i eta))
OperatorMatrix h_ion(const ModelParams& p, const FockDim& dim);

// full lab-frame Hamiltonian sampled at time t:
// nu n + (omega_a/2) sz + omega sx (D e^{-i omega_l t} + D† e^{i omega_l t})
OperatorMatrix h_full_at(const ModelParams& p, double t, const FockDim& dim);

// resonant interaction-picture Hamiltonian for sideband k: couples |e,n> to
// |g,n+k> with element omega e^{-eta^2/2} (-i eta)^k sqrt(n!/(n+k)!) L_n^{(k)}(eta^2);
// k < 0 is the conjugate-symmetric case with the spin roles swapped
OperatorMatrix h_lir(const ModelParams& p, const FockDim& dim);

// linearized frame: nu n + omega sz + (eta nu / 2) sx (a + a†) - (delta/2) sx,
// plus the nu eta^2/4 constant shift when include_const is set
OperatorMatrix h_linearized(const ModelParams& p, const FockDim& dim, bool include_const);

// Jaynes-Cummings form: nu n + omega sz + (eta nu / 2)(s+ a + a† s-)
OperatorMatrix h_mir(const ModelParams& p, const FockDim& dim);

// dispersive effective Hamiltonian:
// nu n + omega sz + (chi_ion/2) sz (n + 1/2) + (delta/2) sx + (kappa/2) sz (a† + a)
OperatorMatrix h_dispersive(const ModelParams& p, const FockDim& dim);
// same assembly from explicitly supplied constants
CMatrix h_dispersive_cc(const ModelParams& p, const FockDim& dim, const CouplingConstants& cc);

// R = e^{i n pi/2} e^{(pi/4)(s+ - s-)} e^{-i (eta/2)(a + a†) sz}
OperatorMatrix transform_R(const ModelParams& p, const FockDim& dim);

// U1 = exp(xi1 (a† s+ - a s-)), U2 = exp(xi2 (a s+ - a† s-)); appends a warning
// when max(|xi1|,|xi2|) > 0.15 (first-order elimination loses accuracy there)
std::pair<OperatorMatrix, OperatorMatrix> transform_U12(const ModelParams& p, const FockDim& dim,
                                                        std::vector<std::string>* warnings = nullptr);
OperatorMatrix transform_U1_xi(double xi1, const FockDim& dim);
OperatorMatrix transform_U2_xi(double xi2, const FockDim& dim);

}  // namespace ionsim
