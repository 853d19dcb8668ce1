#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "ionsim/kernels.hpp"

// serial-vs-OpenMP timing for the three hot kernels. The variants run the
// identical scalar loop per output element, so max|diff| must print as 0.
using namespace ionsim;

namespace {

CMatrix random_matrix(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n);
  for (auto& v : m.a) v = cplx(u(rng), u(rng));
  return m;
}

CVector random_vector(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector v(n);
  for (auto& x : v) x = cplx(u(rng), u(rng));
  return v;
}

template <typename F>
double time_ms(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double omp_ms, double maxdiff) {
  std::printf("%-16s serial %9.3f ms   omp %9.3f ms   speedup %5.2fx   max|diff| %g\n", name,
              serial_ms, omp_ms, serial_ms / omp_ms, maxdiff);
}

}  // namespace

int main() {
  std::mt19937 rng(12345);
  std::printf("openmp: %s\n", kern::openmp_enabled() ? "enabled" : "disabled (serial fallback)");

  {
    const int n = 240;
    const CMatrix A = random_matrix(n, rng), B = random_matrix(n, rng);
    CMatrix Cs(n), Co(n);
    kern::gemm_serial(A, B, Cs);  // warm up
    const double ts = time_ms([&] { kern::gemm_serial(A, B, Cs); }, 5);
    const double to = time_ms([&] { kern::gemm_omp(A, B, Co); }, 5);
    row("gemm 240x240", ts, to, max_abs_diff(Cs, Co));
  }
  {
    const int n = 122;  // Fig-style joint dimension
    const int samples = 20000;
    const CMatrix V = random_matrix(n, rng);
    const CVector c = random_vector(n, rng);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = 0.01 * i;
    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = 0.005 * i;
    auto ps = kern::pe_phase_grid_serial(V, w, c, times, n / 2);
    const double ts = time_ms([&] { ps = kern::pe_phase_grid_serial(V, w, c, times, n / 2); }, 3);
    std::vector<double> po;
    const double to = time_ms([&] { po = kern::pe_phase_grid_omp(V, w, c, times, n / 2); }, 3);
    double md = 0.0;
    for (int i = 0; i < samples; ++i) md = std::max(md, std::abs(ps[i] - po[i]));
    row("phase grid", ts, to, md);
  }
  {
    const int n = 1200;
    const CMatrix A = random_matrix(n, rng);
    const CVector x = random_vector(n, rng);
    CVector ys(n), yo(n);
    const double ts = time_ms([&] { kern::matvec_serial(A, x.data(), ys.data()); }, 20);
    const double to = time_ms([&] { kern::matvec_omp(A, x.data(), yo.data()); }, 20);
    double md = 0.0;
    for (int i = 0; i < n; ++i) md = std::max(md, std::abs(ys[i] - yo[i]));
    row("matvec 1200", ts, to, md);
  }
  return 0;
}
