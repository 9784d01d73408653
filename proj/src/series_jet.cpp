#include "hypasym/series_jet.hpp"

#include "hypasym/errors.hpp"

namespace hypasym {

SeriesJet fd_jet(const std::function<DoubleDouble(const DoubleDouble&)>& f, const DoubleDouble& center,
                 const DoubleDouble& step, int degree, int half_width) {
  if (degree < 0 || half_width < 1 || 2 * half_width < degree) {
    throw Error(ErrorKind::Domain, "fd_jet: stencil too small for requested degree");
  }
  const int m = 2 * half_width + 1;
  // Nodes in units of step, so the interpolant is in s = (x - center)/step.
  std::vector<DoubleDouble> nodes(m);
  std::vector<DoubleDouble> dd(m);
  for (int k = 0; k < m; ++k) {
    nodes[k] = static_cast<double>(k - half_width);
    dd[k] = f(center + step * nodes[k]);
  }
  for (int j = 1; j < m; ++j) {
    for (int k = m - 1; k >= j; --k) dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - j]);
  }
  // Newton form to monomial coefficients in s.
  std::vector<DoubleDouble> poly(m, DoubleDouble(0.0));
  poly[0] = dd[m - 1];
  int len = 1;
  for (int k = m - 2; k >= 0; --k) {
    // poly = poly * (s - nodes[k]) + dd[k]
    for (int i = len; i >= 1; --i) poly[i] = poly[i - 1] - poly[i] * nodes[k];
    poly[0] = dd[k] - poly[0] * nodes[k];
    ++len;
  }
  SeriesJet jet(static_cast<std::size_t>(degree + 1));
  jet.set_center(center);
  DoubleDouble scale = 1.0;
  for (int i = 0; i <= degree; ++i) {
    jet[i] = poly[i] / scale;
    scale *= step;
  }
  return jet;
}

}  // namespace hypasym
