#include "dlevin/types.hpp"

#include <cmath>
#include <sstream>

namespace dlevin {

bool Rectangle::valid() const {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) && a < b &&
         c < d;
}

std::array<Rectangle, 4> Rectangle::quadrants() const {
  const double xm = 0.5 * (a + b);
  const double ym = 0.5 * (c + d);
  return {Rectangle{a, xm, c, ym}, Rectangle{xm, b, c, ym}, Rectangle{a, xm, ym, d},
          Rectangle{xm, b, ym, d}};
}

void require_valid(const Rectangle& rect) {
  if (!rect.valid()) {
    std::ostringstream os;
    os << "degenerate rectangle [" << rect.a << "," << rect.b << "]x[" << rect.c << "," << rect.d
       << "]";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace dlevin
