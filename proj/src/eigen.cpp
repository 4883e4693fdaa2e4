#include "nhflip/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace nhflip {

namespace {

struct Givens {
  double c;
  cplx s;
};

// G = [[c, s], [-conj(s), c]] with G [f; g] = [r; 0]
Givens make_givens(cplx f, cplx g) {
  if (g == cplx(0.0, 0.0)) return {1.0, cplx(0.0, 0.0)};
  if (f == cplx(0.0, 0.0)) return {0.0, std::conj(g) / std::abs(g)};
  const double af = std::abs(f);
  const double d = std::sqrt(af * af + std::norm(g));
  return {af / d, (f / af) * std::conj(g) / d};
}

void hessenberg(std::vector<cplx>& h, int n) {
  auto at = [&](int i, int j) -> cplx& { return h[i * n + j]; };
  std::vector<cplx> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    // Householder vector for column k, rows k+1..n-1
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(at(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cplx x0 = at(k + 1, k);
    cplx phase = (x0 == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    cplx alpha = phase * xnorm;
    double vnorm_sq = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = at(i, k);
      if (i == k + 1) v[i] += alpha;
      vnorm_sq += std::norm(v[i]);
    }
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;
    // H <- (I - beta v v^H) H
    for (int j = k; j < n; ++j) {
      cplx dot(0.0, 0.0);
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, j);
      dot *= beta;
      for (int i = k + 1; i < n; ++i) at(i, j) -= v[i] * dot;
    }
    // H <- H (I - beta v v^H)
    for (int i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (int j = k + 1; j < n; ++j) dot += at(i, j) * v[j];
      dot *= beta;
      for (int j = k + 1; j < n; ++j) at(i, j) -= dot * std::conj(v[j]);
    }
  }
  // clean below the first subdiagonal
  for (int i = 2; i < n; ++i)
    for (int j = 0; j + 1 < i; ++j) at(i, j) = cplx(0.0, 0.0);
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  // eigenvalue of [[a,b],[c,d]] closest to d
  const cplx tr = a + d;
  const cplx det = a * d - b * c;
  cplx disc = std::sqrt(tr * tr - 4.0 * det);
  cplx mu1 = 0.5 * (tr + disc);
  cplx mu2 = 0.5 * (tr - disc);
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

std::vector<cplx> dense_eigenvalues(const std::vector<cplx>& a, int n) {
  if (n == 0) return {};
  std::vector<cplx> h = a;
  auto at = [&](int i, int j) -> cplx& { return h[i * n + j]; };
  hessenberg(h, n);

  std::vector<cplx> eig(n);
  const double eps = 1e-15;
  int p = n - 1;
  int stagnant = 0;
  long long iters = 0;
  const long long iter_cap = 200LL * n;

  while (p >= 0) {
    if (p == 0) {
      eig[0] = at(0, 0);
      break;
    }
    // deflate negligible subdiagonals
    for (int i = 1; i <= p; ++i) {
      if (std::abs(at(i, i - 1)) <=
          eps * (std::abs(at(i - 1, i - 1)) + std::abs(at(i, i))))
        at(i, i - 1) = cplx(0.0, 0.0);
    }
    if (at(p, p - 1) == cplx(0.0, 0.0)) {
      eig[p] = at(p, p);
      --p;
      stagnant = 0;
      continue;
    }
    // start of the unreduced block ending at p
    int l = p;
    while (l > 0 && at(l, l - 1) != cplx(0.0, 0.0)) --l;

    if (++iters > iter_cap)
      throw QRNonConvergence("shifted QR exceeded iteration cap");

    cplx sigma = wilkinson_shift(at(p - 1, p - 1), at(p - 1, p), at(p, p - 1),
                                 at(p, p));
    if (++stagnant > 20) {
      // exceptional shift to break rare cycling
      sigma = at(p, p) + cplx(std::abs(at(p, p - 1)), 0.0);
      stagnant = 0;
    }

    for (int i = l; i <= p; ++i) at(i, i) -= sigma;
    // QR by Givens on the Hessenberg block, then RQ
    std::vector<Givens> rots(p - l);
    for (int i = l; i < p; ++i) {
      Givens g = make_givens(at(i, i), at(i + 1, i));
      rots[i - l] = g;
      for (int j = i; j <= p; ++j) {
        const cplx hi = at(i, j), hj = at(i + 1, j);
        at(i, j) = g.c * hi + g.s * hj;
        at(i + 1, j) = -std::conj(g.s) * hi + g.c * hj;
      }
    }
    for (int i = l; i < p; ++i) {
      const Givens& g = rots[i - l];
      const int top = std::min(i + 1, p);
      for (int r = l; r <= top; ++r) {
        const cplx hi = at(r, i), hj = at(r, i + 1);
        at(r, i) = g.c * hi + std::conj(g.s) * hj;
        at(r, i + 1) = -g.s * hi + g.c * hj;
      }
    }
    for (int i = l; i <= p; ++i) at(i, i) += sigma;
  }
  return eig;
}

cplx char_poly(const std::vector<cplx>& a, int n, cplx lambda) {
  std::vector<cplx> lu = a;
  auto at = [&](int i, int j) -> cplx& { return lu[i * n + j]; };
  for (int i = 0; i < n; ++i) at(i, i) -= lambda;
  cplx det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      det = -det;
    }
    if (at(k, k) == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    det *= at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = at(i, k) / at(k, k);
      for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return det;
}

}  // namespace nhflip
