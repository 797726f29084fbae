#pragma once

// Chebyshev extrema grids, spectral differentiation and interpolation
// matrices, barycentric evaluation and the discrete Chebyshev transform.
//
// All matrices act in reference coordinates on [-1,1]; callers apply the
// chain-rule factor 2/(hi-lo) when working on a physical interval.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dlevin/types.hpp"

namespace dlevin {

// k-point Chebyshev extrema grid, ascending: nodes[j] = cos((k-1-j) pi/(k-1)).
struct ChebGrid1D {
  int k = 0;
  std::vector<double> nodes;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// k x k tensor grid on a physical rectangle. Point (i, j) is stored at
// i + k*j, so the x index runs fastest.
struct TensorGrid {
  int k = 0;
  Rectangle rect;
  std::vector<Point2> points;

  const Point2& at(int i, int j) const { return points[static_cast<std::size_t>(i + k * j)]; }
};

struct DiffMatrix {
  int k = 0;
  Eigen::MatrixXd entries;
};

// k^2 x l^2 matrix taking values on the l x l grid to values on the k x k grid.
struct InterpMatrix {
  int k = 0;
  int l = 0;
  Eigen::MatrixXd entries;
};

// Samples of a field on a tensor grid, in grid order.
struct NodalField {
  TensorGrid grid;
  std::vector<cplx> values;
};

ChebGrid1D cheb_nodes(int k);

TensorGrid tensor_grid(int k, const Rectangle& rect);

// Cached; the returned references stay valid for the lifetime of the program.
const ChebGrid1D& cached_nodes(int k);
const DiffMatrix& diff_matrix(int k);
const InterpMatrix& interp_matrix(int k, int l);

// Lagrange basis of `from` evaluated at `targets` (reference coordinates):
// result(r, s) = l_s(targets[r]).
Eigen::MatrixXd lagrange_matrix(const ChebGrid1D& from, std::span<const double> targets);

// Second-form barycentric evaluation of the interpolant through `values` at
// reference coordinate t in [-1,1].
cplx bary_eval(const ChebGrid1D& grid, std::span<const cplx> values, double t);

// Chebyshev coefficients c_0..c_{k-1} of the interpolant through nodal values.
std::vector<cplx> cheb_coeffs(std::span<const cplx> values);

// Nodal values of sum_m c_m T_m on the grid of the same size.
std::vector<cplx> cheb_synthesis(std::span<const cplx> coeffs);

// Affine maps between [lo,hi] and [-1,1]. The endpoints map exactly.
inline double to_physical(double t, double lo, double hi) {
  if (t == -1.0) return lo;
  if (t == 1.0) return hi;
  return 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
}

inline double to_reference(double x, double lo, double hi) {
  if (x == lo) return -1.0;
  if (x == hi) return 1.0;
  return (2.0 * x - lo - hi) / (hi - lo);
}

}  // namespace dlevin
