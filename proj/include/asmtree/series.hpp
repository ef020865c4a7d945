#pragma once

#include "asmtree/exact.hpp"
#include "asmtree/graph.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace asmtree {

using Exponent = std::vector<int>;

// Multivariate power series over the rationals, truncated to the box
// 0 <= e[i] <= caps[i]. Coefficients are stored densely in mixed-radix order
// (last variable fastest), which is lexicographic order on exponents.
// Every retained coefficient is exact: products and square roots only ever
// read coefficients inside the box.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::vector<int> caps);

  static TruncatedSeries constant(std::vector<int> caps, const Rational& c);
  // x_var
  static TruncatedSeries variable(std::vector<int> caps, int var);

  int nvars() const { return static_cast<int>(caps_.size()); }
  const std::vector<int>& caps() const { return caps_; }
  std::size_t size() const { return coeffs_.size(); }

  bool in_window(std::span<const int> e) const;
  // Throws InputError when e lies outside the window.
  const Rational& coeff(std::span<const int> e) const;
  void set_coeff(std::span<const int> e, const Rational& c);

  // Dense access by mixed-radix index.
  const Rational& at(std::size_t index) const { return coeffs_[index]; }
  Rational& at(std::size_t index) { return coeffs_[index]; }
  std::size_t index_of(std::span<const int> e) const;
  Exponent exponent_of(std::size_t index) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const Rational& scalar);

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void require_same_window(const TruncatedSeries& other) const;

  std::vector<int> caps_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> coeffs_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(TruncatedSeries a, const Rational& s);

// Truncated product. Throws InputError if the windows differ.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// The square root with constant term 1. With E the degree operator
// sum x_i d/dx_i, g^2 = f gives 2 f E(g) = g E(f), so for |a| > 0
//   2|a| g_a = sum_{m != 0} f_m (3|m| - 2|a|) g_{a-m},
// one pass over the window costing one term per nonzero coefficient of f.
// Throws InputError unless f(0) = 1.
TruncatedSeries sqrt1(const TruncatedSeries& f);

// Univariate truncated series; coeffs[n] is the coefficient of x^n.
struct Series1 {
  std::vector<Rational> coeffs;

  Series1() = default;
  explicit Series1(int cap) : coeffs(static_cast<std::size_t>(cap) + 1) {}

  int cap() const { return static_cast<int>(coeffs.size()) - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs[n]; }
  Rational& operator[](std::size_t n) { return coeffs[n]; }

  friend bool operator==(const Series1&, const Series1&) = default;
};

Series1 sqrt1(const Series1& f);

// Exponential generating function of the assembly-tree counts of the
// (H, phi)-graphs: 1 - sqrt(1 - 2 sum x_i + sum_{phi(i)=0} x_i^2
//   + 2 sum_{{i,j} not in E(H)} x_i x_j).
// Throws RefusedError if H is disconnected, InputError on a bad phi.
TruncatedSeries hgraph_egf(const Graph& base, std::span<const int> phi, std::vector<int> caps);
TruncatedSeries hgraph_radicand(const Graph& base, std::span<const int> phi, std::vector<int> caps);

// coefficient * n1! n2! ... ; throws std::domain_error if the result is not
// an integer.
BigInt count_from_egf(const TruncatedSeries& egf, std::span<const int> n);

// EGF summing assembly trees over all vertex-labeled (H, phi)-graphs on n
// vertices, for H with N vertices, M edges and J vertices where phi = 0.
Series1 b_egf(int N, int M, int J, int cap);

// Coefficients of x1^n ... xk^n. Requires all caps equal.
Series1 diagonal(const TruncatedSeries& s);

// Explicit diagonal coefficient of 1 - sqrt(1 - 2x - 2y + y^2):
//   a_n = - sum_{m = ceil(3n/2)}^{2n} C(1/2, m) C(m, n) C(m-n, 2m-3n) 4^(m-n).
// The leading minus comes from the "1 -" together with the (-1)^m of the
// binomial expansion cancelling the (-1)^(2n-m) of the -y^2 terms. This is
// the EGF coefficient; the count for the graph with n + n vertices is
// (n!)^2 a_n.
Rational diag_formula_easyex(int n);

}  // namespace asmtree
