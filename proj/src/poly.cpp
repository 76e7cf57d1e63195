#include "symfem/poly.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>

#include "symfem/errors.hpp"

namespace symfem {

namespace {

std::uint64_t pack(std::span<const int> alpha) {
  std::uint64_t key = 0;
  for (int a : alpha) key = (key << 8) | static_cast<std::uint64_t>(a);
  return key;
}

int default_max_degree(int dim) {
  switch (dim) {
  case 1: return 48;
  case 2: return 28;
  case 3: return 20;
  case 4: return 10;
  default: return 6;
  }
}

// All exponents of total degree d in dim variables, descending lex order.
void append_compositions(int dim, int d, std::vector<int>& out) {
  std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
  alpha[0] = d;
  while (true) {
    out.insert(out.end(), alpha.begin(), alpha.end());
    // Next composition in descending lex order.
    int j = dim - 2;
    while (j >= 0 && alpha[static_cast<std::size_t>(j)] == 0) --j;
    if (j < 0) break;
    alpha[static_cast<std::size_t>(j)] -= 1;
    int rest = 0;
    for (int i = j + 1; i < dim; ++i) rest += alpha[static_cast<std::size_t>(i)];
    for (int i = j + 1; i < dim; ++i) alpha[static_cast<std::size_t>(i)] = 0;
    alpha[static_cast<std::size_t>(j + 1)] = rest + 1;
  }
}

} // namespace

long long binomial(long long n, long long m) {
  if (m < 0 || n < 0 || n < m) return 0;
  m = std::min(m, n - m);
  long long r = 1;
  for (long long i = 1; i <= m; ++i) r = r * (n - m + i) / i;
  return r;
}

long monomial_count(int n, int d) { return d < 0 ? 0 : static_cast<long>(binomial(n + d, n)); }

MonomialTable::MonomialTable(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  count_upto_.resize(static_cast<std::size_t>(max_degree + 1));
  for (int d = 0; d <= max_degree; ++d) {
    append_compositions(dim, d, exponents_);
    count_upto_[static_cast<std::size_t>(d)] = static_cast<int>(exponents_.size()) / dim;
  }
  const int total = count_upto_.back();
  degree_of_.resize(static_cast<std::size_t>(total));
  lookup_.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    auto e = exponent(i);
    degree_of_[static_cast<std::size_t>(i)] = std::accumulate(e.begin(), e.end(), 0);
    lookup_.emplace_back(pack(e), i);
  }
  std::sort(lookup_.begin(), lookup_.end());

  parent_.assign(static_cast<std::size_t>(total), -1);
  parent_var_.assign(static_cast<std::size_t>(total), -1);
  times_var_.assign(static_cast<std::size_t>(total) * dim, -1);
  std::vector<int> alpha(static_cast<std::size_t>(dim));
  for (int i = 0; i < total; ++i) {
    auto e = exponent(i);
    std::copy(e.begin(), e.end(), alpha.begin());
    for (int v = 0; v < dim; ++v) {
      alpha[static_cast<std::size_t>(v)] += 1;
      times_var_[static_cast<std::size_t>(i) * dim + v] = index(alpha);
      alpha[static_cast<std::size_t>(v)] -= 1;
    }
    if (i > 0) {
      for (int v = 0; v < dim; ++v) {
        if (alpha[static_cast<std::size_t>(v)] > 0) {
          alpha[static_cast<std::size_t>(v)] -= 1;
          parent_[static_cast<std::size_t>(i)] = index(alpha);
          parent_var_[static_cast<std::size_t>(i)] = v;
          break;
        }
      }
    }
  }
}

const MonomialTable& MonomialTable::get(int dim) {
  static const std::array<MonomialTable, kMaxDim> tables = [] {
    return std::array<MonomialTable, kMaxDim>{
        MonomialTable(1, default_max_degree(1)), MonomialTable(2, default_max_degree(2)),
        MonomialTable(3, default_max_degree(3)), MonomialTable(4, default_max_degree(4)),
        MonomialTable(5, default_max_degree(5)), MonomialTable(6, default_max_degree(6))};
  }();
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("MonomialTable: unsupported dimension " + std::to_string(dim));
  return tables[static_cast<std::size_t>(dim - 1)];
}

int MonomialTable::count(int degree) const {
  if (degree < 0) return 0;
  if (degree > max_degree_)
    throw InvalidArgument("MonomialTable: degree " + std::to_string(degree) + " exceeds max " +
                          std::to_string(max_degree_) + " in dimension " + std::to_string(dim_));
  return count_upto_[static_cast<std::size_t>(degree)];
}

int MonomialTable::index(std::span<const int> alpha) const {
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) return -1;
    deg += a;
  }
  if (deg > max_degree_) return -1;
  const auto key = pack(alpha);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, -1));
  if (it == lookup_.end() || it->first != key) return -1;
  return it->second;
}

void MonomialTable::evaluate(std::span<const double> x, int degree, std::span<double> out) const {
  const int n = count(degree);
  assert(static_cast<int>(out.size()) >= n);
  out[0] = 1.0;
  for (int i = 1; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        out[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])] * x[static_cast<std::size_t>(parent_var_[static_cast<std::size_t>(i)])];
}

Eigen::MatrixXd MonomialTable::evaluate_many(const Eigen::MatrixXd& points, int degree) const {
  const int n = count(degree);
  Eigen::MatrixXd out(points.cols(), n);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Eigen::Index q = 0; q < points.cols(); ++q) {
    evaluate({points.col(q).data(), static_cast<std::size_t>(points.rows())}, degree, row);
    for (int i = 0; i < n; ++i) out(q, i) = row[static_cast<std::size_t>(i)];
  }
  return out;
}

// ---------------------------------------------------------------------------

Poly::Poly(int dim, int degree) : dim_(dim), degree_(degree) {
  coeffs_.assign(static_cast<std::size_t>(MonomialTable::get(dim).count(degree)), 0.0);
}

Poly Poly::constant(int dim, double value) {
  Poly p(dim, 0);
  p.coeffs_[0] = value;
  return p;
}

Poly Poly::variable(int dim, int var) {
  Poly p(dim, 1);
  p.coeffs_[static_cast<std::size_t>(1 + var)] = 1.0;
  return p;
}

Poly Poly::affine(double constant_term, std::span<const double> gradient) {
  const int dim = static_cast<int>(gradient.size());
  Poly p(dim, 1);
  p.coeffs_[0] = constant_term;
  for (int i = 0; i < dim; ++i) p.coeffs_[static_cast<std::size_t>(1 + i)] = gradient[static_cast<std::size_t>(i)];
  p.trim();
  return p;
}

Poly Poly::monomial(std::span<const int> alpha, double coefficient) {
  const int dim = static_cast<int>(alpha.size());
  const auto& table = MonomialTable::get(dim);
  const int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
  Poly p(dim, deg);
  const int idx = table.index(alpha);
  if (idx < 0) throw InvalidArgument("Poly::monomial: exponent out of range");
  p.coeffs_[static_cast<std::size_t>(idx)] = coefficient;
  p.trim();
  return p;
}

Poly Poly::from_coefficients(int dim, int degree, std::span<const double> coeffs) {
  Poly p(dim, degree);
  const std::size_t n = std::min(coeffs.size(), p.coeffs_.size());
  std::copy_n(coeffs.begin(), n, p.coeffs_.begin());
  p.trim();
  return p;
}

bool Poly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Poly::operator()(std::span<const double> x) const {
  const auto& table = MonomialTable::get(dim_);
  thread_local std::vector<double> buf;
  buf.resize(coeffs_.size());
  table.evaluate(x, degree_, buf);
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * buf[i];
  return s;
}

Poly Poly::derivative(int var) const {
  const auto& table = MonomialTable::get(dim_);
  Poly d(dim_, std::max(0, degree_ - 1));
  for (int i = 0; i < size(); ++i) {
    const double c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    auto e = table.exponent(i);
    const int a = e[static_cast<std::size_t>(var)];
    if (a == 0) continue;
    std::array<int, MonomialTable::kMaxDim> beta{};
    std::copy(e.begin(), e.end(), beta.begin());
    beta[static_cast<std::size_t>(var)] -= 1;
    const int j = table.index({beta.data(), static_cast<std::size_t>(dim_)});
    d.coeffs_[static_cast<std::size_t>(j)] += a * c;
  }
  d.trim();
  return d;
}

Eigen::VectorXd Poly::coefficients_upto(int degree) const {
  const int n = MonomialTable::get(dim_).count(degree);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  const int m = std::min(n, size());
  for (int i = 0; i < m; ++i) v[i] = coeffs_[static_cast<std::size_t>(i)];
  return v;
}

void Poly::resize_degree(int degree) {
  if (degree <= degree_) return;
  degree_ = degree;
  coeffs_.resize(static_cast<std::size_t>(MonomialTable::get(dim_).count(degree)), 0.0);
}

void Poly::trim() {
  const auto& table = MonomialTable::get(dim_);
  while (degree_ > 0) {
    const int lo = table.count(degree_ - 1);
    bool zero = true;
    for (std::size_t i = static_cast<std::size_t>(lo); i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0.0) {
        zero = false;
        break;
      }
    }
    if (!zero) break;
    --degree_;
    coeffs_.resize(static_cast<std::size_t>(lo));
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.dim_ != dim_) throw InvalidArgument("Poly: dimension mismatch");
  resize_degree(other.degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.dim_ != dim_) throw InvalidArgument("Poly: dimension mismatch");
  resize_degree(other.degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("Poly: dimension mismatch");
  const int dim = a.dim_;
  const auto& table = MonomialTable::get(dim);
  Poly r(dim, a.degree_ + b.degree_);
  std::array<int, MonomialTable::kMaxDim> gamma{};
  for (int i = 0; i < a.size(); ++i) {
    const double ca = a.coeffs_[static_cast<std::size_t>(i)];
    if (ca == 0.0) continue;
    auto ea = table.exponent(i);
    for (int j = 0; j < b.size(); ++j) {
      const double cb = b.coeffs_[static_cast<std::size_t>(j)];
      if (cb == 0.0) continue;
      auto eb = table.exponent(j);
      for (int v = 0; v < dim; ++v)
        gamma[static_cast<std::size_t>(v)] = ea[static_cast<std::size_t>(v)] + eb[static_cast<std::size_t>(v)];
      const int k = table.index({gamma.data(), static_cast<std::size_t>(dim)});
      r.coeffs_[static_cast<std::size_t>(k)] += ca * cb;
    }
  }
  r.trim();
  return r;
}

// ---------------------------------------------------------------------------

VecPoly VecPoly::zero(int n, int dim) { return VecPoly(std::vector<Poly>(static_cast<std::size_t>(n), Poly(dim))); }

int VecPoly::degree() const {
  int d = 0;
  for (const auto& p : comp) d = std::max(d, p.degree());
  return d;
}

Eigen::VectorXd VecPoly::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v[i] = comp[static_cast<std::size_t>(i)](x);
  return v;
}

VecPoly& VecPoly::operator+=(const VecPoly& o) {
  if (o.size() != size()) throw InvalidArgument("VecPoly: size mismatch");
  for (int i = 0; i < size(); ++i) comp[static_cast<std::size_t>(i)] += o.comp[static_cast<std::size_t>(i)];
  return *this;
}

VecPoly& VecPoly::operator*=(double s) {
  for (auto& p : comp) p *= s;
  return *this;
}

} // namespace symfem
