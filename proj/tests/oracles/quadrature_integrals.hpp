#pragma once

// Brute-force numerical integration of s-type Gaussian integrals. Nothing
// here uses the Gaussian product theorem or the erf closed forms; 1/r is
// handled through 1/r = (2/sqrt(pi)) int_0^inf exp(-t^2 r^2) dt.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using Point = std::array<double, 3>;

struct Gauss {
  double exponent;
  Point center;
};

namespace detail {

inline constexpr double kTol = 1e-11;

template <class F>
double integrate(F f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, kTol);
}

// Integrates over the real line, split at the given points so sharp features
// sit on interval ends.
template <class F>
double integrate_line(F f, std::vector<double> cuts, double width) {
  std::sort(cuts.begin(), cuts.end());
  double total = integrate(f, cuts.front() - width, cuts.front());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) total += integrate(f, cuts[i], cuts[i + 1]);
  total += integrate(f, cuts.back(), cuts.back() + width);
  return total;
}

inline double width_for(double min_exponent) { return 12.0 / std::sqrt(min_exponent); }

// Integrates a product of factors exp(-e (x - c)^2) (times anything bounded)
// over the intersection of the windows |x - c| <= 8 / sqrt(e), outside of
// which some factor is below exp(-64). A zero exponent gives no window.
template <class F>
double integrate_window(F f, std::initializer_list<std::pair<double, double>> factors) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& [c, e] : factors) {
    if (e <= 0.0) continue;
    const double w = 8.0 / std::sqrt(e);
    lo = std::max(lo, c - w);
    hi = std::min(hi, c + w);
  }
  if (!(hi > lo)) return 0.0;
  // Fixed composite Gauss-Legendre: smooth, and free of the tolerance
  // noise that makes nested adaptive rules recurse.
  const int panels = 4;
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k)
    total += boost::math::quadrature::gauss<double, 30>::integrate(f, lo + k * h, lo + (k + 1) * h);
  return total;
}

// int_0^inf g(t) dt via t = u / (1 - u).
template <class G>
double integrate_half_line(G g) {
  auto h = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double t = u / (1.0 - u);
    return g(t) / ((1.0 - u) * (1.0 - u));
  };
  return integrate(h, 0.0, 0.5) + integrate(h, 0.5, 0.9) + integrate(h, 0.9, 0.99) +
         integrate(h, 0.99, 1.0);
}

inline double gauss_1d(const Gauss& g, int axis, double x) {
  const double d = x - g.center[axis];
  return std::exp(-g.exponent * d * d);
}

}  // namespace detail

inline double overlap(const Gauss& a, const Gauss& b) {
  double s = 1.0;
  const double w = detail::width_for(std::min(a.exponent, b.exponent));
  for (int ax = 0; ax < 3; ++ax)
    s *= detail::integrate_line(
        [&](double x) { return detail::gauss_1d(a, ax, x) * detail::gauss_1d(b, ax, x); },
        {a.center[ax], b.center[ax]}, w);
  return s;
}

// -1/2 <a|laplacian|b>, with the Laplacian of b applied analytically.
inline double kinetic(const Gauss& a, const Gauss& b) {
  const double w = detail::width_for(std::min(a.exponent, b.exponent));
  std::array<double, 3> s{}, lap{};
  for (int ax = 0; ax < 3; ++ax) {
    const std::vector<double> cuts{a.center[ax], b.center[ax]};
    s[ax] = detail::integrate_line(
        [&](double x) { return detail::gauss_1d(a, ax, x) * detail::gauss_1d(b, ax, x); }, cuts,
        w);
    lap[ax] = detail::integrate_line(
        [&](double x) {
          const double d = x - b.center[ax];
          const double second = 4.0 * b.exponent * b.exponent * d * d - 2.0 * b.exponent;
          return detail::gauss_1d(a, ax, x) * second * detail::gauss_1d(b, ax, x);
        },
        cuts, w);
  }
  return -0.5 * (lap[0] * s[1] * s[2] + s[0] * lap[1] * s[2] + s[0] * s[1] * lap[2]);
}

// int a(r) b(r) / |r - C| dr for a unit charge at C (positive number).
inline double potential(const Gauss& a, const Gauss& b, const Point& c) {
  auto g = [&](double t) {
    double prod = 1.0;
    for (int ax = 0; ax < 3; ++ax)
      prod *= detail::integrate_window(
          [&](double x) {
            const double d = x - c[ax];
            return detail::gauss_1d(a, ax, x) * detail::gauss_1d(b, ax, x) *
                   std::exp(-t * t * d * d);
          },
          {{a.center[ax], a.exponent}, {b.center[ax], b.exponent}, {c[ax], t * t}});
    return prod;
  };
  return 2.0 / std::sqrt(std::numbers::pi) * detail::integrate_half_line(g);
}

// Chemist-notation (ab|cd).
inline double repulsion(const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& d) {
  auto g = [&](double t) {
    double prod = 1.0;
    for (int ax = 0; ax < 3; ++ax) {
      auto outer = [&](double x1) {
        const double left = detail::gauss_1d(a, ax, x1) * detail::gauss_1d(b, ax, x1);
        if (left == 0.0) return 0.0;
        return left * detail::integrate_window(
                          [&](double x2) {
                            const double d12 = x1 - x2;
                            return detail::gauss_1d(c, ax, x2) * detail::gauss_1d(d, ax, x2) *
                                   std::exp(-t * t * d12 * d12);
                          },
                          {{c.center[ax], c.exponent}, {d.center[ax], d.exponent}, {x1, t * t}});
      };
      prod *= detail::integrate_window(outer, {{a.center[ax], a.exponent},
                                               {b.center[ax], b.exponent}});
      if (prod == 0.0) break;
    }
    return prod;
  };
  return 2.0 / std::sqrt(std::numbers::pi) * detail::integrate_half_line(g);
}

}  // namespace oracle
