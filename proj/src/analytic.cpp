#include "ionsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ionsim/eig.hpp"
#include "ionsim/errors.hpp"
#include "ionsim/kernels.hpp"

namespace ionsim {

namespace {

int sideband_index(const ModelParams& p) {
  if (p.has_k) return p.k;
  const double r = p.delta_value / p.nu;
  const long k = std::lround(r);
  if (std::abs(r - k) > 1e-9)
    throw precondition_error("resonant interaction needs an integer sideband: delta/nu = " +
                             std::to_string(r));
  return static_cast<int>(k);
}

void check_pe_range(const std::vector<double>& pe, const char* who) {
  for (double v : pe)
    if (!(v >= 0.0 && v <= 1.0 + 1e-9))
      throw numerical_error(std::string(who) + ": excitation probability escaped [0,1]");
}

// c_n = omega e^{-eta^2/2} (-i eta)^ka sqrt(n!/(n+ka)!) L_n^{(ka)}(eta^2), ka >= 0
CVector sideband_couplings(const ModelParams& p, int ka, int n_top) {
  const double x = p.eta * p.eta;
  const std::vector<double> lag = laguerre_column(n_top, ka, x);
  static const cplx micycle[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  const cplx phase = micycle[ka % 4] * std::pow(p.eta, ka);
  double fr = 1.0;  // sqrt(n!/(n+ka)!)
  for (int j = 1; j <= ka; ++j) fr /= std::sqrt(static_cast<double>(j));
  CVector c(n_top + 1);
  const double pref = p.omega * std::exp(-0.5 * x);
  for (int n = 0; n <= n_top; ++n) {
    c[n] = pref * phase * fr * lag[n];
    fr *= std::sqrt(static_cast<double>(n + 1) / (n + 1 + ka));
  }
  return c;
}

}  // namespace

TimeSeries lir_pe(const ModelParams& p, const StateVector& psi0,
                  const std::vector<double>& times, const FockDim& dim) {
  if (psi0.dim != dim.joint()) throw precondition_error("lir_pe: state/space dimension mismatch");
  if (times.empty()) throw precondition_error("lir_pe: empty time grid");
  const int k = sideband_index(p);
  const int ka = std::abs(k);
  const int pair_top = dim.n_max - ka;  // highest n with both partners inside
  const CVector cpl = pair_top >= 0 ? sideband_couplings(p, ka, std::max(pair_top, 0)) : CVector{};

  // static contribution: excited states with no partner in the truncated space
  double pe_static = 0.0;
  if (k >= 0) {
    for (int n = std::max(pair_top + 1, 0); n <= dim.n_max; ++n)
      pe_static += std::norm(psi0.a[joint_index(0, n, dim)]);
  } else {
    for (int m = 0; m < std::min(ka, dim.nb()); ++m)
      pe_static += std::norm(psi0.a[joint_index(0, m, dim)]);
  }

  TimeSeries ts;
  ts.model_tag = "lir_eq5";
  ts.params = p;
  ts.dim = dim;
  ts.t = times;
  ts.pe.assign(times.size(), pe_static);
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    double pe = ts.pe[s];
    for (int n = 0; n <= pair_top; ++n) {
      // pair (alpha, beta): alpha is the excited amplitude
      const cplx a0 = k >= 0 ? psi0.a[joint_index(0, n, dim)] : psi0.a[joint_index(0, n + ka, dim)];
      const cplx b0 = k >= 0 ? psi0.a[joint_index(1, n + ka, dim)] : psi0.a[joint_index(1, n, dim)];
      const cplx c = cpl[n];
      const double ac = std::abs(c);
      cplx at;
      if (ac > 0.0) {
        const cplx dir = k >= 0 ? std::conj(c) / ac : c / ac;
        at = std::cos(ac * t) * a0 - cplx(0, 1) * std::sin(ac * t) * dir * b0;
      } else {
        at = a0;
      }
      pe += std::norm(at);
    }
    ts.pe[s] = pe;
  }
  check_pe_range(ts.pe, "lir_pe");
  return ts;
}

TimeSeries mir_pe(const ModelParams& p, const StateVector& psi0,
                  const std::vector<double>& times, const FockDim& dim) {
  if (psi0.dim != dim.joint()) throw precondition_error("mir_pe: state/space dimension mismatch");
  if (times.empty()) throw precondition_error("mir_pe: empty time grid");
  const double g = 0.5 * p.eta * p.nu;
  const double dlt = 0.5 * (2.0 * p.omega - p.nu);

  TimeSeries ts;
  ts.model_tag = "mir_eq8";
  ts.params = p;
  ts.dim = dim;
  ts.t = times;
  const double pe_static = std::norm(psi0.a[joint_index(0, dim.n_max, dim)]);
  ts.pe.assign(times.size(), pe_static);
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    double pe = ts.pe[s];
    for (int M = 1; M <= dim.n_max; ++M) {
      const cplx a0 = psi0.a[joint_index(0, M - 1, dim)];
      const cplx b0 = psi0.a[joint_index(1, M, dim)];
      const double gm = g * std::sqrt(static_cast<double>(M));
      const double orab = std::hypot(dlt, gm);
      cplx at;
      if (orab > 0.0) {
        const double cs = std::cos(orab * t), sn = std::sin(orab * t);
        at = (cs - cplx(0, 1) * sn * (dlt / orab)) * a0 - cplx(0, 1) * sn * (gm / orab) * b0;
      } else {
        at = a0;
      }
      pe += std::norm(at);  // mean-energy phase of the manifold drops out here
    }
    ts.pe[s] = pe;
  }
  check_pe_range(ts.pe, "mir_pe");
  return ts;
}

TimeSeries dispersive_pe(const ModelParams& p, const StateVector& psi0,
                         const std::vector<double>& times, const FockDim& dim,
                         const CouplingConstants* cc_override) {
  if (psi0.dim != dim.joint())
    throw precondition_error("dispersive_pe: state/space dimension mismatch");
  if (times.empty()) throw precondition_error("dispersive_pe: empty time grid");
  const CouplingConstants cc = cc_override ? *cc_override : coupling_constants(p);
  const OperatorMatrix U1 = transform_U1_xi(cc.xi1, dim);
  const OperatorMatrix U2 = transform_U2_xi(cc.xi2, dim);
  const OperatorMatrix R = transform_R(p, dim);
  const CMatrix Mf = kern::matmul(U2.m, kern::matmul(U1.m, R.m));
  const CVector psi1 = kern::matvec(Mf, psi0.a);
  const CMatrix Heff = h_dispersive_cc(p, dim, cc);

  TimeSeries ts;
  ts.model_tag = "dispersive_eq10";
  ts.params = p;
  ts.dim = dim;
  ts.t = times;
  if (p.delta() == 0.0) {
    // the effective Hamiltonian is diagonal: phases only
    std::vector<double> w(Heff.n);
    for (int i = 0; i < Heff.n; ++i) w[i] = Heff(i, i).real();
    ts.pe = kern::pe_phase_grid(dagger(Mf), w, psi1, times, dim.nb());
  } else {
    const HermEig e = herm_eig(Heff);
    const CMatrix back = kern::matmul(dagger(Mf), e.V);
    const CVector c = kern::matvec_conjtrans(e.V, psi1);
    ts.pe = kern::pe_phase_grid(back, e.w, c, times, dim.nb());
  }
  check_pe_range(ts.pe, "dispersive_pe");
  return ts;
}

OperatorMatrix sideband_model(const ModelParams& p, const FockDim& dim) {
  if (!(p.omega < p.nu))
    throw precondition_error("sideband_model: sideband resonances require the low-intensity "
                             "regime (omega < nu)");
  const double d = p.delta();
  if (std::abs(std::abs(d) - p.nu) > 1e-12 * p.nu)
    throw precondition_error("sideband_model: detuning must be +nu or -nu");
  return h_dispersive(p, dim);
}

}  // namespace ionsim
