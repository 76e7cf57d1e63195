#include "symfem/symmat.hpp"

#include "symfem/errors.hpp"

namespace symfem {

int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

SymMat SymMat::from_matrix(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  SymMat s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.at(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

SymMat SymMat::identity(int n) {
  SymMat s(n);
  for (int i = 0; i < n; ++i) s.at(i, i) = 1.0;
  return s;
}

SymMat SymMat::sym_outer(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.size());
  SymMat s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.at(i, j) = 0.5 * (a[i] * b[j] + a[j] * b[i]);
  return s;
}

SymMat SymMat::unit(int n, int p) {
  SymMat s(n);
  s.v_[p] = 1.0;
  return s;
}

Eigen::MatrixXd SymMat::matrix() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMat::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Eigen::VectorXd frobenius_weights(int n) {
  Eigen::VectorXd w(sym_size(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) w[sym_index(n, i, j)] = i == j ? 1.0 : 2.0;
  return w;
}

double frobenius(const SymMat& a, const SymMat& b) {
  if (a.n() != b.n()) throw InvalidArgument("frobenius: size mismatch");
  return (frobenius_weights(a.n()).array() * a.packed().array() * b.packed().array()).sum();
}

SymMatPoly SymMatPoly::zero(int n, int dim) {
  SymMatPoly f;
  f.n = n;
  f.entries.assign(static_cast<std::size_t>(sym_size(n)), Poly(dim));
  return f;
}

SymMatPoly SymMatPoly::scaled(const Poly& p, const SymMat& t) {
  SymMatPoly f;
  f.n = t.n();
  f.entries.reserve(static_cast<std::size_t>(sym_size(t.n())));
  for (int k = 0; k < sym_size(t.n()); ++k) f.entries.push_back(t.packed()[k] * p);
  return f;
}

int SymMatPoly::degree() const {
  int d = 0;
  for (const auto& p : entries) d = std::max(d, p.degree());
  return d;
}

SymMat SymMatPoly::operator()(const Eigen::VectorXd& x) const {
  SymMat s(n);
  for (int k = 0; k < sym_size(n); ++k) s.packed()[k] = entries[static_cast<std::size_t>(k)](x);
  return s;
}

SymMatPoly& SymMatPoly::operator+=(const SymMatPoly& o) {
  if (o.n != n) throw InvalidArgument("SymMatPoly: size mismatch");
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] += o.entries[k];
  return *this;
}

SymMatPoly& SymMatPoly::operator*=(double s) {
  for (auto& p : entries) p *= s;
  return *this;
}

VecPoly sym_div(const SymMatPoly& field, double scale) {
  const int n = field.n;
  const int dim = field.dim();
  VecPoly out = VecPoly::zero(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.comp[static_cast<std::size_t>(i)] += field.entry(i, j).derivative(j);
    out.comp[static_cast<std::size_t>(i)] *= 1.0 / scale;
  }
  return out;
}

SymMatPoly sym_grad(const VecPoly& v, double scale) {
  const int n = v.size();
  SymMatPoly out = SymMatPoly::zero(n, v.comp.front().dim());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Poly e = v.comp[static_cast<std::size_t>(i)].derivative(j) + v.comp[static_cast<std::size_t>(j)].derivative(i);
      out.entries[static_cast<std::size_t>(sym_index(n, i, j))] = (0.5 / scale) * e;
    }
  return out;
}

Eigen::VectorXd flatten(const SymMatPoly& field, int degree) {
  const int m = MonomialTable::get(field.dim()).count(degree);
  Eigen::VectorXd v(static_cast<Eigen::Index>(m) * field.entries.size());
  for (std::size_t k = 0; k < field.entries.size(); ++k) {
    if (field.entries[k].degree() > degree) throw InvalidArgument("flatten: field degree exceeds requested degree");
    v.segment(static_cast<Eigen::Index>(k) * m, m) = field.entries[k].coefficients_upto(degree);
  }
  return v;
}

Eigen::VectorXd flatten(const VecPoly& field, int degree) {
  const int m = MonomialTable::get(field.comp.front().dim()).count(degree);
  Eigen::VectorXd v(static_cast<Eigen::Index>(m) * field.size());
  for (int k = 0; k < field.size(); ++k) {
    if (field.comp[static_cast<std::size_t>(k)].degree() > degree)
      throw InvalidArgument("flatten: field degree exceeds requested degree");
    v.segment(static_cast<Eigen::Index>(k) * m, m) = field.comp[static_cast<std::size_t>(k)].coefficients_upto(degree);
  }
  return v;
}

SymMatPoly unflatten_sym(int n, int dim, int degree, const Eigen::Ref<const Eigen::VectorXd>& coeffs) {
  const int m = MonomialTable::get(dim).count(degree);
  SymMatPoly f;
  f.n = n;
  for (int k = 0; k < sym_size(n); ++k) {
    Eigen::VectorXd seg = coeffs.segment(static_cast<Eigen::Index>(k) * m, m);
    f.entries.push_back(Poly::from_coefficients(dim, degree, {seg.data(), static_cast<std::size_t>(m)}));
  }
  return f;
}

VecPoly unflatten_vec(int n, int dim, int degree, const Eigen::Ref<const Eigen::VectorXd>& coeffs) {
  const int m = MonomialTable::get(dim).count(degree);
  VecPoly f;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd seg = coeffs.segment(static_cast<Eigen::Index>(k) * m, m);
    f.comp.push_back(Poly::from_coefficients(dim, degree, {seg.data(), static_cast<std::size_t>(m)}));
  }
  return f;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<SymMatPoly>& fields, int degree) {
  if (fields.empty()) return {};
  const Eigen::Index rows = flatten(fields.front(), degree).size();
  Eigen::MatrixXd c(rows, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) c.col(static_cast<Eigen::Index>(j)) = flatten(fields[j], degree);
  return c;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<VecPoly>& fields, int degree) {
  if (fields.empty()) return {};
  const Eigen::Index rows = flatten(fields.front(), degree).size();
  Eigen::MatrixXd c(rows, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) c.col(static_cast<Eigen::Index>(j)) = flatten(fields[j], degree);
  return c;
}

SymMatPoly combine(const std::vector<SymMatPoly>& fields, const Eigen::Ref<const Eigen::VectorXd>& c) {
  if (fields.empty()) throw InvalidArgument("combine: no fields");
  SymMatPoly out = SymMatPoly::zero(fields.front().n, fields.front().dim());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const double cj = c[static_cast<Eigen::Index>(j)];
    if (cj == 0.0) continue;
    SymMatPoly t = fields[j];
    t *= cj;
    out += t;
  }
  return out;
}

} // namespace symfem
