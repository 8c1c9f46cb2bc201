#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "linequad/apps.hpp"
#include "squiggle_coefficients.hpp"

namespace linequad::apps {

double ErrorGrid::max_error() const {
  double m = 0.0;
  for (double e : err) m = std::max(m, e);
  return m;
}

double ErrorGrid::max_error_beyond(double threshold) const {
  if (dist.size() != err.size()) throw std::logic_error("ErrorGrid: no distances recorded");
  double m = 0.0;
  for (size_t i = 0; i < err.size(); ++i)
    if (dist[i] >= threshold) m = std::max(m, err[i]);
  return m;
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw std::invalid_argument("grid must look like WxH, got '" + text + "'");
  GridSpec g;
  try {
    size_t used = 0;
    g.nx = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("");
    const std::string rest = text.substr(x + 1);
    g.ny = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like WxH, got '" + text + "'");
  }
  if (g.nx < 1 || g.ny < 1) throw std::invalid_argument("grid dimensions must be positive");
  return g;
}

ParamCurve parabola_curve(double k) {
  ParamCurve c;
  c.dim = 2;
  c.g = [k](double t) { return Vec3{t, k * t * t, 0.0}; };
  c.dg = [k](double t) { return Vec3{1.0, 2.0 * k * t, 0.0}; };
  c.d2g = [k](double) { return Vec3{0.0, 2.0 * k, 0.0}; };
  c.t_begin = -1.0;
  c.t_end = 1.0;
  return c;
}

ParamCurve starfish_curve() {
  ParamCurve c;
  c.dim = 2;
  c.g = [](double t) {
    const double r = 1.0 + 0.3 * std::cos(5.0 * t);
    return Vec3{r * std::cos(t), r * std::sin(t), 0.0};
  };
  c.dg = [](double t) {
    const double r = 1.0 + 0.3 * std::cos(5.0 * t), dr = -1.5 * std::sin(5.0 * t);
    return Vec3{dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t), 0.0};
  };
  c.d2g = [](double t) {
    const double r = 1.0 + 0.3 * std::cos(5.0 * t), dr = -1.5 * std::sin(5.0 * t),
                 ddr = -7.5 * std::cos(5.0 * t);
    // (r'' + 2 i r' - r) e^{it}
    const cplx v = cplx(ddr - r, 2.0 * dr) * std::exp(cplx(0.0, t));
    return Vec3{v.real(), v.imag(), 0.0};
  };
  c.t_begin = 0.0;
  c.t_end = 2.0 * pi;
  c.periodic = true;
  return c;
}

namespace {

// Sum over modes of c(k) / (5 + |k|) (2 pi i k)^order e^{2 pi i k t}, real part.
Vec3 squiggle_eval(double t, int order) {
  using data::squiggle_coefficients;
  using data::squiggle_modes;
  double out[3] = {0.0, 0.0, 0.0};
  for (int k = -squiggle_modes; k <= squiggle_modes; ++k) {
    const cplx phase = std::exp(cplx(0.0, 2.0 * pi * k * t)) / (5.0 + std::abs(k));
    cplx factor = 1.0;
    for (int o = 0; o < order; ++o) factor *= cplx(0.0, 2.0 * pi * k);
    for (int i = 0; i < 3; ++i) {
      const auto& c = squiggle_coefficients[i][k + squiggle_modes];
      out[i] += std::real(cplx(c[0], c[1]) * factor * phase);
    }
  }
  return {out[0], out[1], out[2]};
}

}  // namespace

ParamCurve squiggle_curve() {
  ParamCurve c;
  c.dim = 3;
  c.g = [](double t) { return squiggle_eval(t, 0); };
  c.dg = [](double t) { return squiggle_eval(t, 1); };
  c.d2g = [](double t) { return squiggle_eval(t, 2); };
  c.t_begin = 0.0;
  c.t_end = 1.0;
  c.periodic = true;
  return c;
}

}  // namespace linequad::apps
