#include "symfem/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <fmt/format.h>

#include "symfem/errors.hpp"

namespace symfem {

void gauss_jacobi01(int q, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  // Golub-Welsch on [-1, 1] with weight (1 - x)^alpha (1 + x)^0.
  const double a = alpha;
  const double b = 0.0;
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(q, q);
  for (int k = 0; k < q; ++k) {
    const double s = 2.0 * k + a + b;
    jm(k, k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < q) {
      const double kk = k + 1.0;
      const double t = 2.0 * kk + a + b;
      const double off = std::sqrt(4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
      jm(k, k + 1) = off;
      jm(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  nodes.resize(q);
  weights.resize(q);
  const double scale = std::pow(2.0, -a - 1.0);
  for (int i = 0; i < q; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    nodes[i] = 0.5 * (es.eigenvalues()[i] + 1.0);
    weights[i] = mu0 * v0 * v0 * scale;
  }
}

namespace {

QuadRule build_rule(int m, int degree) {
  QuadRule r;
  r.simplex_dim = m;
  r.degree = degree;
  if (m == 0) {
    r.barycentric = Eigen::MatrixXd::Ones(1, 1);
    r.weights = Eigen::VectorXd::Ones(1);
    return r;
  }
  const int q = (degree + 2) / 2;
  std::vector<Eigen::VectorXd> nodes(static_cast<std::size_t>(m)), wts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    gauss_jacobi01(q, static_cast<double>(m - 1 - i), nodes[static_cast<std::size_t>(i)], wts[static_cast<std::size_t>(i)]);
  long total = 1;
  for (int i = 0; i < m; ++i) total *= q;
  r.barycentric.resize(m + 1, total);
  r.weights.resize(total);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (long p = 0; p < total; ++p) {
    double w = 1.0;
    double rest = 1.0;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double u = nodes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      w *= wts[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      const double xi = u * rest;
      rest *= 1.0 - u;
      r.barycentric(i + 1, p) = xi;
      sum += xi;
    }
    r.barycentric(0, p) = 1.0 - sum;
    r.weights[p] = w;
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < q) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return r;
}

} // namespace

const QuadRule& simplex_rule(int m, int degree) {
  if (degree < 0) throw QuadratureError(fmt::format("simplex_rule: negative degree {}", degree));
  if (degree > kMaxQuadratureDegree)
    throw QuadratureError(fmt::format("simplex_rule: degree {} unsupported (maximum supported degree is {})", degree,
                                      kMaxQuadratureDegree));
  if (m < 0 || m > MonomialTable::kMaxDim) throw QuadratureError(fmt::format("simplex_rule: unsupported dimension {}", m));
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{m, degree}];
  if (!slot) slot = std::make_unique<QuadRule>(build_rule(m, degree));
  return *slot;
}

const QuadRule& triangle_rule_12() {
  static const QuadRule rule = [] {
    struct Orbit {
      double w;
      double a, b, c;
    };
    const Orbit orbits[] = {
        {0.116786275726379, 0.501426509658179, 0.249286745170910, 0.249286745170910},
        {0.050844906370207, 0.873821971016996, 0.063089014491502, 0.063089014491502},
        {0.082851075618374, 0.053145049844817, 0.310352451033784, 0.636502499121399},
    };
    std::vector<std::array<double, 3>> pts;
    std::vector<double> wts;
    for (const Orbit& o : orbits) {
      std::array<double, 3> l = {o.a, o.b, o.c};
      std::sort(l.begin(), l.end());
      do {
        pts.push_back(l);
        wts.push_back(o.w / 2.0);
      } while (std::next_permutation(l.begin(), l.end()));
    }
    QuadRule r;
    r.simplex_dim = 2;
    r.degree = 6;
    r.barycentric.resize(3, static_cast<Eigen::Index>(pts.size()));
    r.weights.resize(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t q = 0; q < pts.size(); ++q) {
      for (int i = 0; i < 3; ++i) r.barycentric(i, static_cast<Eigen::Index>(q)) = pts[q][static_cast<std::size_t>(i)];
      r.weights[static_cast<Eigen::Index>(q)] = wts[q];
    }
    return r;
  }();
  return rule;
}

QuadRule simplex_quadrature(int degree, const Simplex& cell) {
  return scale_rule(simplex_rule(cell.simplex_dim(), degree), cell);
}

QuadRule scale_rule(const QuadRule& rule, const Simplex& cell) {
  if (rule.simplex_dim != cell.simplex_dim())
    throw InvalidArgument(fmt::format("scale_rule: rule on a {}-simplex applied to a {}-simplex", rule.simplex_dim,
                                      cell.simplex_dim()));
  QuadRule r = rule;
  double ref = 1.0;
  for (int i = 2; i <= cell.simplex_dim(); ++i) ref *= i;
  r.weights *= cell.measure() * ref;
  return r;
}

Eigen::MatrixXd quadrature_points(const QuadRule& rule, const Simplex& cell) {
  Eigen::MatrixXd v(cell.ambient_dim(), cell.num_vertices());
  for (int i = 0; i < cell.num_vertices(); ++i) v.col(i) = cell.vertex(i);
  return v * rule.barycentric;
}

} // namespace symfem
