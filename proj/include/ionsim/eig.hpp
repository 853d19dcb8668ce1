#pragma once
#include <vector>

#include "ionsim/matrix.hpp"

namespace ionsim {

// spectral factorization H = V diag(w) V† of a Hermitian matrix;
// V(i,j) is component i of eigenvector j, w ascending
struct HermEig {
  std::vector<double> w;
  CMatrix V;
};

HermEig herm_eig(const CMatrix& H);

}  // namespace ionsim
