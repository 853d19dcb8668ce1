#include "ionsim/eig.hpp"

#include <complex>
#include <string>

#include "ionsim/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// Pin the BLAS backing LAPACK to one thread: keeps results reproducible and
// avoids oversubscription against our own OpenMP loops. Weak so linking
// against a non-OpenBLAS LAPACK still works.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace ionsim {

namespace {
struct BlasPin {
  BlasPin() {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
  }
};
const BlasPin blas_pin;
}  // namespace

HermEig herm_eig(const CMatrix& H) {
  HermEig e;
  e.V = H;
  e.w.assign(H.n, 0.0);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', H.n, e.V.a.data(), H.n, e.w.data());
  if (info != 0)
    throw numerical_error("herm_eig: zheevd failed (info=" + std::to_string(info) +
                          ", dim=" + std::to_string(H.n) + ")");
  return e;
}

}  // namespace ionsim
