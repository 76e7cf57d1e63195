#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symfem {

/// Graded enumeration of monomials x^alpha in `dim` variables.
///
/// Monomials are ordered by total degree, and within one degree in
/// descending lexicographic order of the exponent. The enumeration for
/// degree d is a prefix of the one for any larger degree, so coefficient
/// vectors of different degrees can be compared by zero padding.
class MonomialTable {
public:
  static constexpr int kMaxDim = 6;

  /// Shared table for `dim` variables (1 <= dim <= kMaxDim).
  static const MonomialTable& get(int dim);

  int dim() const noexcept { return dim_; }
  int max_degree() const noexcept { return max_degree_; }

  /// Number of monomials of total degree <= degree.
  int count(int degree) const;

  std::span<const int> exponent(int index) const {
    return {exponents_.data() + static_cast<std::size_t>(index) * dim_, static_cast<std::size_t>(dim_)};
  }
  int total_degree(int index) const { return degree_of_[index]; }

  /// Index of x^alpha, or -1 if alpha exceeds the table.
  int index(std::span<const int> alpha) const;

  /// Index of x_var * m_index, or -1 if beyond max_degree.
  int times_var(int index, int var) const { return times_var_[static_cast<std::size_t>(index) * dim_ + var]; }

  /// Values of every monomial of degree <= degree at x.
  void evaluate(std::span<const double> x, int degree, std::span<double> out) const;

  /// Row q holds all monomials of degree <= degree at points.col(q).
  Eigen::MatrixXd evaluate_many(const Eigen::MatrixXd& points, int degree) const;

private:
  MonomialTable(int dim, int max_degree);

  int dim_;
  int max_degree_;
  std::vector<int> exponents_;
  std::vector<int> degree_of_;
  std::vector<int> count_upto_;
  std::vector<int> parent_;
  std::vector<int> parent_var_;
  std::vector<int> times_var_;
  std::vector<std::pair<std::uint64_t, int>> lookup_;
};

/// Polynomial in `dim` variables with real coefficients in the graded
/// monomial basis. The stored degree is the largest degree carrying an
/// exactly nonzero coefficient (0 for the zero polynomial).
class Poly {
public:
  Poly() : Poly(1) {}
  explicit Poly(int dim, int degree = 0);

  static Poly constant(int dim, double value);
  static Poly variable(int dim, int var);
  static Poly affine(double constant_term, std::span<const double> gradient);
  static Poly monomial(std::span<const int> alpha, double coefficient = 1.0);
  /// Polynomial of the given degree with coefficient vector `coeffs`.
  static Poly from_coefficients(int dim, int degree, std::span<const double> coeffs);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  double coefficient(int index) const { return index < size() ? coeffs_[index] : 0.0; }
  bool is_zero() const;

  double operator()(std::span<const double> x) const;
  double operator()(const Eigen::VectorXd& x) const {
    return (*this)(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  }

  Poly derivative(int var) const;

  /// Coefficients zero padded (or truncated) to `degree`.
  Eigen::VectorXd coefficients_upto(int degree) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(double s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= -1.0; }
  friend Poly operator*(const Poly& a, const Poly& b);

private:
  void resize_degree(int degree);
  void trim();

  int dim_;
  int degree_;
  std::vector<double> coeffs_;
};

/// Vector field with one polynomial per Cartesian component.
struct VecPoly {
  std::vector<Poly> comp;

  VecPoly() = default;
  explicit VecPoly(std::vector<Poly> c) : comp(std::move(c)) {}
  static VecPoly zero(int n, int dim);

  int size() const noexcept { return static_cast<int>(comp.size()); }
  int degree() const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

  VecPoly& operator+=(const VecPoly& o);
  VecPoly& operator*=(double s);
  friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
  friend VecPoly operator*(double s, VecPoly a) { return a *= s; }
};

/// Number of monomials of degree <= d in n variables, C(n + d, n).
long monomial_count(int n, int d);

/// Exact binomial coefficient with C(n, m) = 0 for m < 0 or n < m.
long long binomial(long long n, long long m);

} // namespace symfem
