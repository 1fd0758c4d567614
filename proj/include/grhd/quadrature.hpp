#pragma once

#include <vector>

#include "grhd/errors.hpp"

namespace grhd {

/// 1D quadrature rule on the reference cell [-1/2, 1/2] with weights summing
/// to one.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree 2n-1 on the
/// reference cell.
Rule1D gauss_legendre(int n);

/// n-point Gauss-Lobatto rule (n >= 2), endpoints included; exact to degree
/// 2n-3. Endpoint weights are 1/(n(n-1)).
Rule1D gauss_lobatto(int n);

/// Node/weight sets the finite-volume scheme needs for solution polynomials
/// of degree K: the smallest L with 2L-3 >= K (floor L=2) and the smallest Q
/// with 2Q >= K+1.
struct QuadratureSet {
  int degree;
  Rule1D lobatto;
  Rule1D legendre;
};

QuadratureSet build_quadrature(int degree);

}  // namespace grhd
