#include "ionsim/models.hpp"

#include <cmath>

#include "ionsim/eig.hpp"
#include "ionsim/errors.hpp"
#include "ionsim/kernels.hpp"

namespace ionsim {

void validate(const ModelParams& p) {
  if (!(p.nu > 0.0)) throw config_error("nu must be > 0");
  if (!(p.omega >= 0.0)) throw config_error("omega must be >= 0");
  if (!(p.eta >= 0.0)) throw config_error("eta must be >= 0");
  if (p.has_omega_a && !(p.omega_a >= 0.0)) throw config_error("omega-a must be >= 0");
  if (p.has_omega_l && !(p.omega_l >= 0.0)) throw config_error("omega-l must be >= 0");
  if (p.has_omega_a && p.has_omega_l) {
    const double mismatch = std::abs((p.omega_a - p.omega_l) - p.delta());
    if (mismatch > 1e-12 * std::max(1.0, p.omega_a))
      throw config_error("omega-a - omega-l does not match the detuning");
  }
}

CouplingConstants coupling_constants(const ModelParams& p) {
  validate(p);
  const double nu2 = p.nu * p.nu;
  const double denom = 4.0 * p.omega * p.omega - nu2;
  if (std::abs(denom) < 1e-9 * nu2)
    throw precondition_error("coupling_constants: resonance pole 2*omega = nu, "
                             "the dispersive expansion is invalid here");
  CouplingConstants cc;
  cc.xi1 = p.eta * p.nu / (2.0 * (p.nu + 2.0 * p.omega));
  cc.xi2 = p.eta * p.nu / (2.0 * (2.0 * p.omega - p.nu));
  cc.chi_ion = 2.0 * p.eta * p.eta * nu2 * p.omega / denom;
  cc.kappa = p.delta() * p.eta * nu2 / denom;
  return cc;
}

double chi_asymptotic(const ModelParams& p, Regime regime) {
  validate(p);
  if (regime == Regime::high) {
    if (!(p.omega > p.nu))
      throw precondition_error("chi_asymptotic: high regime needs omega > nu");
    return p.eta * p.eta * p.nu * p.nu / (2.0 * p.omega);
  }
  if (!(p.omega < p.nu)) throw precondition_error("chi_asymptotic: low regime needs omega < nu");
  return -2.0 * p.eta * p.eta * p.omega;
}

namespace {

OperatorMatrix finish_hermitian(CMatrix m) {
  OperatorMatrix op{std::move(m)};
  if (herm_residual(op.m) > 1e-12 * std::max(1.0, max_abs(op.m)))
    throw numerical_error("hermiticity check failed on a builder output");
  op.hermitian = true;
  return op;
}

void add_free_diagonal(CMatrix& m, const ModelParams& p, const FockDim& dim, double sz_coeff) {
  for (int n = 0; n < dim.nb(); ++n) {
    m(joint_index(0, n, dim), joint_index(0, n, dim)) += p.nu * n + sz_coeff;
    m(joint_index(1, n, dim), joint_index(1, n, dim)) += p.nu * n - sz_coeff;
  }
}

// exp(-i Hgen) for Hermitian Hgen, via the spectral factorization
CMatrix exp_minus_i_herm(const CMatrix& hgen) {
  const HermEig e = herm_eig(hgen);
  CMatrix p(hgen.n);
  for (int i = 0; i < hgen.n; ++i)
    for (int j = 0; j < hgen.n; ++j) p(i, j) = e.V(i, j) * std::polar(1.0, -e.w[j]);
  return kern::matmul(p, dagger(e.V));
}

OperatorMatrix finish_unitary(CMatrix m) {
  OperatorMatrix op{std::move(m)};
  if (unitarity_residual(op.m) > 1e-10)
    throw numerical_error("unitarity check failed on a transform output");
  op.unitary = true;
  op.hermitian = herm_residual(op.m) <= 1e-12 * std::max(1.0, max_abs(op.m));
  return op;
}

}  // namespace

OperatorMatrix h_ion(const ModelParams& p, const FockDim& dim) {
  validate(p);
  validate(dim);
  const int nb = dim.nb();
  const CMatrix d = displacement_boson(p.eta, nb);
  CMatrix h(dim.joint());
  add_free_diagonal(h, p, dim, p.delta() / 2.0);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      h(joint_index(0, i, dim), joint_index(1, j, dim)) += p.omega * d(i, j);
      h(joint_index(1, i, dim), joint_index(0, j, dim)) += p.omega * std::conj(d(j, i));
    }
  return finish_hermitian(std::move(h));
}

OperatorMatrix h_full_at(const ModelParams& p, double t, const FockDim& dim) {
  validate(p);
  validate(dim);
  if (!p.has_omega_a || !p.has_omega_l)
    throw config_error("h_full_at: omega-a and omega-l are required");
  const int nb = dim.nb();
  const CMatrix d = displacement_boson(p.eta, nb);
  const cplx ph = std::polar(1.0, -p.omega_l * t);
  CMatrix h(dim.joint());
  add_free_diagonal(h, p, dim, p.omega_a / 2.0);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      // D is symmetric here, so D e^{-i w t} + D† e^{i w t} = 2 Re(D e^{-i w t})
      const cplx v = p.omega * (d(i, j) * ph + std::conj(d(i, j) * ph));
      h(joint_index(0, i, dim), joint_index(1, j, dim)) += v;
      h(joint_index(1, i, dim), joint_index(0, j, dim)) += v;
    }
  return finish_hermitian(std::move(h));
}

OperatorMatrix h_lir(const ModelParams& p, const FockDim& dim) {
  validate(p);
  validate(dim);
  int k = 0;
  if (p.has_k) {
    k = p.k;
  } else {
    const double kr = p.delta_value / p.nu;
    k = static_cast<int>(std::lround(kr));
    if (std::abs(kr - k) > 1e-9)
      throw precondition_error("h_lir: detuning must be an integer multiple of nu");
  }
  const int ka = std::abs(k);
  const double x = p.eta * p.eta;
  const double pref = p.omega * std::exp(-x / 2.0);
  const cplx micycle[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};  // (-i)^d
  const cplx phase = micycle[ka % 4] * std::pow(p.eta, ka);
  CMatrix h(dim.joint());
  if (ka <= dim.n_max) {
    const std::vector<double> lag = laguerre_column(dim.n_max - ka, ka, x);
    double fact_ratio = 1.0;  // n!/(n+ka)!
    for (int j = 1; j <= ka; ++j) fact_ratio /= double(j);
    for (int n = 0; n + ka <= dim.n_max; ++n) {
      if (n > 0) fact_ratio *= double(n) / double(n + ka);
      const cplx c = pref * phase * std::sqrt(fact_ratio) * lag[n];
      // k >= 0: spin decay raises the phonon number; k < 0: roles swapped
      const int row = (k >= 0) ? joint_index(1, n + ka, dim) : joint_index(0, n + ka, dim);
      const int col = (k >= 0) ? joint_index(0, n, dim) : joint_index(1, n, dim);
      h(row, col) = c;
      h(col, row) = std::conj(c);
    }
  }
  return finish_hermitian(std::move(h));
}

OperatorMatrix h_linearized(const ModelParams& p, const FockDim& dim, bool include_const) {
  validate(p);
  validate(dim);
  const int nb = dim.nb();
  CMatrix h(dim.joint());
  add_free_diagonal(h, p, dim, p.omega);
  const double g = p.eta * p.nu / 2.0;
  const double dx = -p.delta() / 2.0;
  for (int n = 0; n < nb; ++n) {
    h(joint_index(0, n, dim), joint_index(1, n, dim)) += dx;
    h(joint_index(1, n, dim), joint_index(0, n, dim)) += dx;
    if (n + 1 < nb) {
      const double v = g * std::sqrt(double(n + 1));
      h(joint_index(0, n, dim), joint_index(1, n + 1, dim)) += v;
      h(joint_index(1, n + 1, dim), joint_index(0, n, dim)) += v;
      h(joint_index(1, n, dim), joint_index(0, n + 1, dim)) += v;
      h(joint_index(0, n + 1, dim), joint_index(1, n, dim)) += v;
    }
  }
  if (include_const) {
    const double c0 = p.nu * p.eta * p.eta / 4.0;
    for (int i = 0; i < dim.joint(); ++i) h(i, i) += c0;
  }
  return finish_hermitian(std::move(h));
}

OperatorMatrix h_mir(const ModelParams& p, const FockDim& dim) {
  validate(p);
  validate(dim);
  CMatrix h(dim.joint());
  add_free_diagonal(h, p, dim, p.omega);
  const double g = p.eta * p.nu / 2.0;
  for (int n = 1; n <= dim.n_max; ++n) {
    const double v = g * std::sqrt(double(n));
    h(joint_index(0, n - 1, dim), joint_index(1, n, dim)) += v;
    h(joint_index(1, n, dim), joint_index(0, n - 1, dim)) += v;
  }
  return finish_hermitian(std::move(h));
}

CMatrix h_dispersive_cc(const ModelParams& p, const FockDim& dim, const CouplingConstants& cc) {
  const int nb = dim.nb();
  CMatrix h(dim.joint());
  add_free_diagonal(h, p, dim, p.omega);
  for (int n = 0; n < nb; ++n) {
    const double shift = 0.5 * cc.chi_ion * (n + 0.5);
    h(joint_index(0, n, dim), joint_index(0, n, dim)) += shift;
    h(joint_index(1, n, dim), joint_index(1, n, dim)) -= shift;
    const double dx = p.delta() / 2.0;
    h(joint_index(0, n, dim), joint_index(1, n, dim)) += dx;
    h(joint_index(1, n, dim), joint_index(0, n, dim)) += dx;
    if (n + 1 < nb) {
      const double v = 0.5 * cc.kappa * std::sqrt(double(n + 1));
      h(joint_index(0, n, dim), joint_index(0, n + 1, dim)) += v;
      h(joint_index(0, n + 1, dim), joint_index(0, n, dim)) += v;
      h(joint_index(1, n, dim), joint_index(1, n + 1, dim)) -= v;
      h(joint_index(1, n + 1, dim), joint_index(1, n, dim)) -= v;
    }
  }
  return h;
}

OperatorMatrix h_dispersive(const ModelParams& p, const FockDim& dim) {
  validate(dim);
  const CouplingConstants cc = coupling_constants(p);
  return finish_hermitian(h_dispersive_cc(p, dim, cc));
}

OperatorMatrix transform_R(const ModelParams& p, const FockDim& dim) {
  validate(p);
  validate(dim);
  const int nb = dim.nb();
  // factor F = e^{i pi n/2}: generator -(pi/2) n
  CMatrix gf(dim.joint());
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n < nb; ++n)
      gf(joint_index(s, n, dim), joint_index(s, n, dim)) = -0.5 * M_PI * n;
  // factor Y = e^{(pi/4)(s+ - s-)}: generator i (pi/4)(s+ - s-)
  CMatrix gy(dim.joint());
  for (int n = 0; n < nb; ++n) {
    gy(joint_index(0, n, dim), joint_index(1, n, dim)) = cplx(0.0, M_PI / 4.0);
    gy(joint_index(1, n, dim), joint_index(0, n, dim)) = cplx(0.0, -M_PI / 4.0);
  }
  // factor S = e^{-i (eta/2)(a + a†) sz}: generator (eta/2)(a + a†) sz
  CMatrix gs(dim.joint());
  for (int n = 0; n + 1 < nb; ++n) {
    const double v = 0.5 * p.eta * std::sqrt(double(n + 1));
    gs(joint_index(0, n, dim), joint_index(0, n + 1, dim)) = v;
    gs(joint_index(0, n + 1, dim), joint_index(0, n, dim)) = v;
    gs(joint_index(1, n, dim), joint_index(1, n + 1, dim)) = -v;
    gs(joint_index(1, n + 1, dim), joint_index(1, n, dim)) = -v;
  }
  const CMatrix r =
      kern::matmul(exp_minus_i_herm(gf), kern::matmul(exp_minus_i_herm(gy), exp_minus_i_herm(gs)));
  return finish_unitary(r);
}

OperatorMatrix transform_U1_xi(double xi1, const FockDim& dim) {
  validate(dim);
  const int nb = dim.nb();
  // generator i xi1 (a† s+ - a s-) is Hermitian; U1 = exp(-i of it)
  CMatrix g(dim.joint());
  for (int n = 0; n + 1 < nb; ++n) {
    const double v = xi1 * std::sqrt(double(n + 1));
    g(joint_index(0, n + 1, dim), joint_index(1, n, dim)) = cplx(0.0, v);
    g(joint_index(1, n, dim), joint_index(0, n + 1, dim)) = cplx(0.0, -v);
  }
  return finish_unitary(exp_minus_i_herm(g));
}

OperatorMatrix transform_U2_xi(double xi2, const FockDim& dim) {
  validate(dim);
  const int nb = dim.nb();
  CMatrix g(dim.joint());
  for (int n = 0; n + 1 < nb; ++n) {
    const double v = xi2 * std::sqrt(double(n + 1));
    g(joint_index(0, n, dim), joint_index(1, n + 1, dim)) = cplx(0.0, v);
    g(joint_index(1, n + 1, dim), joint_index(0, n, dim)) = cplx(0.0, -v);
  }
  return finish_unitary(exp_minus_i_herm(g));
}

std::pair<OperatorMatrix, OperatorMatrix> transform_U12(const ModelParams& p, const FockDim& dim,
                                                        std::vector<std::string>* warnings) {
  const CouplingConstants cc = coupling_constants(p);
  if (warnings && std::max(std::abs(cc.xi1), std::abs(cc.xi2)) > 0.15)
    warnings->push_back("expansion parameter max(|xi1|,|xi2|) exceeds 0.15; the first-order "
                        "elimination behind the dispersive form degrades");
  return {transform_U1_xi(cc.xi1, dim), transform_U2_xi(cc.xi2, dim)};
}

}  // namespace ionsim
