#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>

namespace dlevin {

using cplx = std::complex<double>;

// Axis-aligned rectangle [a,b] x [c,d].
struct Rectangle {
  double a = -1.0;
  double b = 1.0;
  double c = -1.0;
  double d = 1.0;

  double width() const { return b - a; }
  double height() const { return d - c; }
  double area() const { return width() * height(); }

  // Finite with a < b and c < d.
  bool valid() const;

  // Quadrants in the order R1 (lower left), R2 (lower right),
  // R3 (upper left), R4 (upper right).
  std::array<Rectangle, 4> quadrants() const;

  Rectangle transposed() const { return {c, d, a, b}; }

  bool operator==(const Rectangle&) const = default;
};

// Throws std::invalid_argument unless rect.valid().
void require_valid(const Rectangle& rect);

// Integrand f(x,y) exp(i g(x,y)) over a rectangular domain. The phase is
// real by construction.
struct Integrand2D {
  std::function<cplx(double, double)> amplitude;
  std::function<double(double, double)> phase;
  Rectangle domain;
};

// Raised when an evaluator returns a non-finite sample.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace dlevin
