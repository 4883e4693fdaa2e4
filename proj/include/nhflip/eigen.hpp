#pragma once

#include <vector>

#include "nhflip/types.hpp"

namespace nhflip {

// Eigenvalues of a dense complex matrix (row-major, n x n) by Householder
// Hessenberg reduction followed by shifted QR iteration.  Intended for the
// small coupling matrices of this code (n <= 64); deterministic.
std::vector<cplx> dense_eigenvalues(const std::vector<cplx>& a, int n);

// det(A - lambda I) via LU with partial pivoting; used as an independent
// residual check on computed eigenvalues.
cplx char_poly(const std::vector<cplx>& a, int n, cplx lambda);

}  // namespace nhflip
