#include "grhd/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace grhd {

namespace {

// Legendre polynomial P_n and derivative P_n' at x via the three-term
// recurrence.
struct LegendreEval {
  double p;
  double dp;
};

LegendreEval legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

Rule1D to_reference(std::vector<double> nodes, std::vector<double> weights) {
  // Map [-1,1] to [-1/2,1/2]; weights renormalized to sum 1.
  Rule1D r;
  r.nodes.resize(nodes.size());
  r.weights.resize(weights.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    r.nodes[i] = 0.5 * nodes[i];
    r.weights[i] = 0.5 * weights[i];
  }
  return r;
}

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need n >= 1");
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const LegendreEval le = legendre(n, z);
      const double dz = le.p / le.dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const LegendreEval le = legendre(n, z);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * le.dp * le.dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return to_reference(std::move(x), std::move(w));
}

Rule1D gauss_lobatto(int n) {
  if (n < 2) throw ConfigError("gauss_lobatto: need n >= 2");
  std::vector<double> x(n), w(n);
  x[0] = -1.0;
  x[n - 1] = 1.0;
  const double we = 2.0 / (n * (n - 1.0));
  w[0] = w[n - 1] = we;
  // Interior nodes are the roots of P'_{n-1}; Chebyshev-Lobatto points seed
  // the Newton iteration.
  for (int i = 1; i < n - 1; ++i) {
    double z = -std::cos(M_PI * i / (n - 1.0));
    for (int it = 0; it < 100; ++it) {
      const LegendreEval le = legendre(n - 1, z);
      // P'' from the Legendre ODE: (1-x^2) P'' = 2x P' - n(n+1) P.
      const double d2 =
          (2.0 * z * le.dp - (n - 1.0) * n * le.p) / (1.0 - z * z);
      const double dz = le.dp / d2;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const LegendreEval le = legendre(n - 1, z);
    x[i] = z;
    w[i] = 2.0 / (n * (n - 1.0) * le.p * le.p);
  }
  return to_reference(std::move(x), std::move(w));
}

QuadratureSet build_quadrature(int degree) {
  if (degree < 0) throw ConfigError("build_quadrature: degree must be >= 0");
  QuadratureSet q;
  q.degree = degree;
  const int lobatto_n = std::max(2, (degree + 3 + 1) / 2);  // 2L-3 >= K
  const int legendre_n = std::max(1, (degree + 1 + 1) / 2); // 2Q >= K+1
  q.lobatto = gauss_lobatto(lobatto_n);
  q.legendre = gauss_legendre(legendre_n);
  return q;
}

}  // namespace grhd
