#include "bcfem/bernstein.hpp"

#include <cmath>
#include <stdexcept>

namespace bcfem {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

// n! / (alpha0! alpha1! alpha2!) for |alpha| = n.
double multinomial(const MultiIndex& mi) {
  const int n = mi.degree();
  return binomial(n, mi[0]) * binomial(n - mi[0], mi[1]);
}

double bary_power_product(const Bary& b, const MultiIndex& mi) {
  double r = 1.0;
  for (int i = 0; i < 3; ++i) {
    for (int p = 0; p < mi[i]; ++p) r *= b[i];
  }
  return r;
}

// B^n_alpha(b) with alpha allowed to have a negative entry (value 0 then).
double bernstein_value(const Bary& b, const MultiIndex& mi) {
  if (mi[0] < 0 || mi[1] < 0 || mi[2] < 0) return 0.0;
  return multinomial(mi) * bary_power_product(b, mi);
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_multiindices: negative degree");
  std::vector<MultiIndex> out;
  out.reserve(num_basis_functions(n));
  for (int a0 = 0; a0 <= n; ++a0) {
    for (int a1 = 0; a1 <= n - a0; ++a1) {
      out.push_back({{a0, a1, n - a0 - a1}});
    }
  }
  return out;
}

int num_basis_functions(int degree) { return (degree + 1) * (degree + 2) / 2; }

double univariate_bernstein(int n, int i, double x) {
  if (i < 0 || i > n) throw std::out_of_range("univariate_bernstein: index out of range");
  return binomial(n, i) * std::pow(x, i) * std::pow(1.0 - x, n - i);
}

BasisTabulation tabulate(int degree, const CellGeometry& geom, std::span<const Bary> points, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("tabulate: derivative order must be 0, 1, or 2");
  if (degree < 1) throw std::invalid_argument("tabulate: degree must be >= 1");
  for (const auto& p : points) {
    const double sum = p[0] + p[1] + p[2];
    if (std::abs(sum - 1.0) > 1e-9 || p[0] < -1e-9 || p[1] < -1e-9 || p[2] < -1e-9) {
      throw std::invalid_argument("tabulate: point is not barycentric");
    }
  }

  const auto indices = enumerate_multiindices(degree);
  BasisTabulation tab;
  tab.degree = degree;
  tab.num_basis = static_cast<int>(indices.size());
  tab.num_points = static_cast<int>(points.size());
  tab.values.resize(tab.num_basis * tab.num_points);
  if (order >= 1) tab.gradients.resize(tab.num_basis * tab.num_points);
  if (order == 2) tab.hessians.resize(tab.num_basis * tab.num_points);

  const auto& g = geom.bary_gradients;
  for (int b = 0; b < tab.num_basis; ++b) {
    const MultiIndex& mi = indices[b];
    for (int q = 0; q < tab.num_points; ++q) {
      const Bary& pt = points[q];
      tab.values[b * tab.num_points + q] = bernstein_value(pt, mi);

      if (order >= 1) {
        // d B^n_alpha / d b_i = n B^(n-1)_(alpha - e_i); barycentric
        // gradients are constant, so the chain rule is a plain sum.
        Vec2 grad{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
          MultiIndex lower = mi;
          lower.alpha[i] -= 1;
          grad += static_cast<double>(degree) * bernstein_value(pt, lower) * g[i];
        }
        tab.gradients[b * tab.num_points + q] = grad;
      }

      if (order == 2) {
        std::array<double, 3> hess{0.0, 0.0, 0.0};
        const double scale = static_cast<double>(degree) * (degree - 1);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            MultiIndex lower = mi;
            lower.alpha[i] -= 1;
            lower.alpha[j] -= 1;
            const double c = scale * bernstein_value(pt, lower);
            if (c == 0.0) continue;
            hess[0] += c * g[i].x * g[j].x;
            hess[1] += c * g[i].x * g[j].y;
            hess[2] += c * g[i].y * g[j].y;
          }
        }
        tab.hessians[b * tab.num_points + q] = hess;
      }
    }
  }
  return tab;
}

QuadratureRule triangle_quadrature(int exactness) {
  constexpr int kMaxExactness = 12;
  if (exactness < 0 || exactness > kMaxExactness) {
    throw std::invalid_argument("triangle_quadrature: exactness outside tabulated range [0, 12]");
  }
  // Duffy collapse of a tensor Gauss rule: x = u, y = v (1 - u) with Jacobian
  // (1 - u). The extra factor raises the u-degree by one, hence the +2.
  const int m = (exactness + 3) / 2 < 1 ? 1 : (exactness + 3) / 2;
  const auto gauss = gauss_legendre_01(m);

  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.reserve(m * m);
  rule.weights.reserve(m * m);
  for (const auto& [u, wu] : gauss) {
    for (const auto& [v, wv] : gauss) {
      const double x = u;
      const double y = v * (1.0 - u);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(wu * wv * (1.0 - u));
    }
  }
  return rule;
}

std::vector<std::pair<double, double>> gauss_legendre_01(int num_points) {
  if (num_points < 1) throw std::invalid_argument("gauss_legendre_01: need at least one point");
  const int n = num_points;
  std::vector<std::pair<double, double>> out(n);
  // Newton iteration on P_n over [-1,1], Chebyshev initial guesses.
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[n - 1 - k] = {0.5 * (x + 1.0), 0.5 * w};  // map to [0,1]
  }
  return out;
}

bool coefficient_box_certificate(std::span<const double> coeffs, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("coefficient_box_certificate: empty box");
  for (double c : coeffs) {
    if (c < lo || c > hi) return false;
  }
  return true;
}

double reference_triangle_monomial_integral(int a, int b) {
  // a! b! / (a+b+2)! computed as a product to stay in range.
  double r = 1.0;
  for (int i = 1; i <= a + b + 2; ++i) {
    r /= i;
    if (i <= a) r *= i;
  }
  for (int i = 1; i <= b; ++i) r *= i;
  return r;
}

}  // namespace bcfem
