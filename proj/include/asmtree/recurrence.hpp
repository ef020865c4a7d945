#pragma once

#include "asmtree/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asmtree {

// Polynomial in one variable, coeffs[k] multiplying m^k.
struct Polynomial {
  std::vector<Rational> coeffs;

  Rational operator()(long m) const;
  bool is_zero() const;
  int degree() const;  // -1 for the zero polynomial

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

// Linear recurrence with polynomial coefficients,
//   P_L(n+L) f(n+L) + ... + P_1(n+1) f(n+1) + P_0(n) f(n) = 0
// for every n >= offset. Each P_i is evaluated at the index of the term it
// multiplies.
struct PRecurrence {
  int order = 0;
  int offset = 0;
  std::vector<Polynomial> polys;  // polys[i] = P_i, size order + 1
  std::string label;

  // Throws InputError if order < 1, the polynomial count is wrong, offset is
  // negative, or P_L is identically zero.
  void validate() const;

  int max_degree() const;

  friend bool operator==(const PRecurrence& a, const PRecurrence& b) {
    return a.order == b.order && a.offset == b.offset && a.polys == b.polys;
  }
};

// 2 (n+1)^2 a(n+1) = 3 (3n-1)(3n+1) a(n), n >= 1: the diagonal of
// 1 - sqrt(1 - 2x - 2y + y^2). Initial terms 0, 1.
PRecurrence builtin_a();
// (n+2)^2 (n+1) b(n+2) = 2 (6n^2+12n+5)(n+1) b(n+1) - n (2n-1)(2n+3) b(n),
// n >= 1: the diagonal of the complete bipartite EGF. Initial terms 0, 1, 5/2.
PRecurrence builtin_b();
// Order-3 recurrence for the diagonal of the complete tripartite EGF,
// reconstructed by guess() from exact series coefficients and verified
// against them. Initial terms 0, 3, 84, 4935.
PRecurrence builtin_c();

std::vector<Rational> builtin_initial(char which);

// Extends `initial` (f(0), f(1), ...) up to index `upto` by solving each
// relation for its highest term. Needs initial.size() >= order + offset.
// Throws RefusedError naming the index if the leading polynomial vanishes.
std::vector<Rational> extend(const PRecurrence& rec, const std::vector<Rational>& initial, int upto);

struct VerifyResult {
  bool pass = false;
  int checked = 0;                   // relations tested
  std::optional<int> first_failure;  // n of the first relation that fails
  bool degenerate() const { return checked == 0; }
};

// Tests every relation n >= offset whose terms all lie inside seq. A
// sequence too short to test anything passes degenerately.
VerifyResult verify(const PRecurrence& rec, const std::vector<Rational>& seq);

struct GuessOptions {
  // Trailing relations held back from fitting and used only to check the
  // candidate. Defaults to max(5, max_order + 2).
  std::optional<int> surplus;
  // First relation index. Defaults to the index of the first nonzero term,
  // since leading zeros usually mark a boundary where the relation fails.
  std::optional<int> offset;
};

// Searches (order, degree) cells in lexicographic order for the first
// recurrence fitting the data by exact fraction-free elimination that also
// holds on the held-back terms. Result is normalized: integer coefficients
// with content 1, top coefficient of P_L positive.
// Throws InputError when seq has fewer than
// (max_order+1)(max_degree+1) + max_order + surplus + offset - 1 terms.
std::optional<PRecurrence> guess(const std::vector<Rational>& seq, int max_order, int max_degree,
                                 const GuessOptions& options = {});

// Scales to integer coefficients with content 1 and positive top
// coefficient of P_L.
PRecurrence normalized(PRecurrence rec);

// Two recurrences agree on a window when they extend `initial` to the same
// terms through index `upto`.
bool equivalent_on(const PRecurrence& a, const PRecurrence& b, const std::vector<Rational>& initial, int upto);

}  // namespace asmtree
