#include "ionsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ionsim/eig.hpp"
#include "ionsim/errors.hpp"
#include "ionsim/kernels.hpp"

namespace ionsim {

StateVector make_state(CVector amps) {
  if (amps.empty()) throw precondition_error("make_state: empty amplitude vector");
  const double nrm = norm2(amps);
  if (std::abs(nrm - 1.0) > 1e-12)
    throw precondition_error("make_state: state not normalized, |norm - 1| = " +
                             std::to_string(std::abs(nrm - 1.0)));
  StateVector s;
  s.dim = static_cast<int>(amps.size());
  s.a = std::move(amps);
  return s;
}

StateVector basis_state(const FockDim& dim, int spin, int n) {
  if (spin != 0 && spin != 1) throw precondition_error("basis_state: spin must be 0 (e) or 1 (g)");
  if (n < 0 || n > dim.n_max) throw precondition_error("basis_state: fock index out of range");
  CVector a(dim.joint(), cplx(0.0, 0.0));
  a[joint_index(spin, n, dim)] = cplx(1.0, 0.0);
  StateVector s;
  s.dim = dim.joint();
  s.a = std::move(a);
  return s;
}

StateVector coherent_e(const FockDim& dim, double x) {
  CVector a(dim.joint(), cplx(0.0, 0.0));
  // c_n = x^n / sqrt(n!) e^{-x^2/2}, built iteratively, then renormalized in
  // the truncated space
  double c = std::exp(-0.5 * x * x);
  for (int n = 0; n <= dim.n_max; ++n) {
    a[joint_index(0, n, dim)] = cplx(c, 0.0);
    c *= x / std::sqrt(static_cast<double>(n + 1));
  }
  const double nrm = norm2(a);
  if (nrm <= 0.0) throw numerical_error("coherent_e: zero norm after truncation");
  const double inv = 1.0 / nrm;
  for (auto& v : a) v *= inv;
  StateVector s;
  s.dim = dim.joint();
  s.a = std::move(a);
  return s;
}

namespace {

int parse_fock_index(const std::string& text, const std::string& whole) {
  if (text.empty()) throw config_error("init state '" + whole + "': missing fock index");
  char* end = nullptr;
  const long n = std::strtol(text.c_str(), &end, 10);
  if (end == nullptr || *end != '\0')
    throw config_error("init state '" + whole + "': fock index must be an integer");
  return static_cast<int>(n);
}

}  // namespace

StateVector init_state(const std::string& name, const FockDim& dim) {
  if (name == "e0") return basis_state(dim, 0, 0);
  if (name == "g0") return basis_state(dim, 1, 0);
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const std::string tail = name.substr(colon + 1);
    if (head == "e" || head == "g") {
      const int n = parse_fock_index(tail, name);
      if (n < 0 || n > dim.n_max)
        throw config_error("init state '" + name + "': fock index out of range for n_max=" +
                           std::to_string(dim.n_max));
      return basis_state(dim, head == "e" ? 0 : 1, n);
    }
    if (head == "ecoh") {
      if (tail.empty()) throw config_error("init state '" + name + "': missing amplitude");
      char* end = nullptr;
      const double x = std::strtod(tail.c_str(), &end);
      if (end == nullptr || *end != '\0')
        throw config_error("init state '" + name + "': amplitude must be a number");
      return coherent_e(dim, x);
    }
  }
  throw config_error("init state '" + name + "': expected e0, g0, e:<n>, g:<n>, or ecoh:<x>");
}

double pe_observable(const StateVector& psi) {
  if (psi.dim <= 0 || psi.dim % 2 != 0)
    throw precondition_error("pe_observable: dim must be positive and even");
  const double n2 = norm2(psi.a);
  if (std::abs(n2 - 1.0) > 1e-9)
    throw precondition_error("pe_observable: state not normalized");
  double pe = 0.0;
  const int eblock = psi.dim / 2;
  for (int i = 0; i < eblock; ++i) pe += std::norm(psi.a[i]);
  return pe;
}

OperatorMatrix propagator(const OperatorMatrix& H, double t) {
  if (!H.hermitian) throw precondition_error("propagator: hamiltonian must carry the hermitian flag");
  const HermEig e = herm_eig(H.m);
  const int n = H.m.n;
  CMatrix phased(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phased(i, j) = e.V(i, j) * std::polar(1.0, -e.w[j] * t);
  OperatorMatrix U;
  U.m = kern::matmul(phased, dagger(e.V));
  const double res = unitarity_residual(U.m);
  if (res > 1e-10)
    throw numerical_error("propagator: unitarity residual " + std::to_string(res));
  U.unitary = true;
  U.hermitian = false;
  return U;
}

TimeSeries evolve_series(const OperatorMatrix& H, const StateVector& psi0,
                         const std::vector<double>& times) {
  if (!H.hermitian) throw precondition_error("evolve_series: hamiltonian must carry the hermitian flag");
  if (psi0.dim != H.m.n) throw precondition_error("evolve_series: state/operator dimension mismatch");
  if (times.empty()) throw precondition_error("evolve_series: empty time grid");
  const HermEig e = herm_eig(H.m);
  const CVector c = kern::matvec_conjtrans(e.V, psi0.a);
  TimeSeries ts;
  ts.dim = FockDim{psi0.dim / 2 - 1, 0};
  ts.t = times;
  ts.pe = kern::pe_phase_grid(e.V, e.w, c, times, psi0.dim / 2);
  for (double p : ts.pe)
    if (!(p >= 0.0 && p <= 1.0 + 1e-9))
      throw numerical_error("evolve_series: excitation probability escaped [0,1]");
  return ts;
}

TimeSeries evolve_timedep(const ModelParams& p, const StateVector& psi0,
                          const std::vector<double>& times, double step, const FockDim& dim) {
  if (!p.has_omega_a || !p.has_omega_l)
    throw config_error("evolve_timedep: omega_a and omega_l are both required");
  if (psi0.dim != dim.joint())
    throw precondition_error("evolve_timedep: state/space dimension mismatch");
  if (times.empty()) throw precondition_error("evolve_timedep: empty time grid");
  if (times.front() < 0.0) throw precondition_error("evolve_timedep: times must be nonnegative");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw precondition_error("evolve_timedep: times must be ascending");
  const double bound = p.nu * dim.n_max + 0.5 * p.omega_a + 2.0 * p.omega;
  if (!(step > 0.0)) throw precondition_error("evolve_timedep: step must be positive");
  if (step * bound > 0.1)
    throw precondition_error("evolve_timedep: step too large, step * norm bound = " +
                             std::to_string(step * bound) + " > 0.1");

  CVector psi = psi0.a;
  TimeSeries ts;
  ts.model_tag = "full_eq1";
  ts.params = p;
  ts.dim = dim;
  ts.t = times;
  ts.pe.reserve(times.size());
  double cur = 0.0;
  for (double target : times) {
    const double span = target - cur;
    if (span > 1e-15) {
      const int nsub = static_cast<int>(std::ceil(span / step - 1e-12));
      const double s = span / std::max(nsub, 1);
      for (int k = 0; k < std::max(nsub, 1); ++k) {
        const double tmid = cur + (k + 0.5) * s;
        const OperatorMatrix H = h_full_at(p, tmid, dim);
        kern::taylor_exp_apply(H.m, s, psi);
      }
      cur = target;
    }
    double pe = 0.0;
    for (int i = 0; i < dim.nb(); ++i) pe += std::norm(psi[i]);
    ts.pe.push_back(pe);
  }
  return ts;
}

ConvergenceReport convergence_check(const ModelParams& p, const FockDim& dim,
                                    const std::vector<double>& times,
                                    const std::string& init) {
  FockDim hi = dim;
  hi.n_max = 2 * dim.n_max;
  validate(hi);
  const TimeSeries lo_ts = evolve_series(h_ion(p, dim), init_state(init, dim), times);
  const TimeSeries hi_ts = evolve_series(h_ion(p, hi), init_state(init, hi), times);
  ConvergenceReport r;
  r.n_max_lo = dim.n_max;
  r.n_max_hi = hi.n_max;
  for (std::size_t i = 0; i < times.size(); ++i)
    r.sup_diff = std::max(r.sup_diff, std::abs(lo_ts.pe[i] - hi_ts.pe[i]));
  r.pass = r.sup_diff <= 1e-6;
  return r;
}

std::vector<double> uniform_grid(double tmax, int samples) {
  if (!(tmax > 0.0)) throw precondition_error("uniform_grid: tmax must be positive");
  if (samples < 2) throw precondition_error("uniform_grid: need at least 2 samples");
  std::vector<double> t(samples);
  for (int i = 0; i < samples; ++i) t[i] = tmax * static_cast<double>(i) / (samples - 1);
  return t;
}

}  // namespace ionsim
