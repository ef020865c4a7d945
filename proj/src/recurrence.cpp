#include "asmtree/recurrence.hpp"

#include "asmtree/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace asmtree {

Rational Polynomial::operator()(long m) const {
  Rational acc = 0;
  const Rational x(m);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

int Polynomial::degree() const {
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] != 0) return static_cast<int>(k);
  }
  return -1;
}

void PRecurrence::validate() const {
  if (order < 1) throw InputError("recurrence order must be at least 1");
  if (offset < 0) throw InputError("recurrence offset must be non-negative");
  if (static_cast<int>(polys.size()) != order + 1) {
    throw InputError("recurrence of order " + std::to_string(order) + " needs " + std::to_string(order + 1) +
                     " polynomials");
  }
  if (polys.back().is_zero()) throw InputError("leading polynomial of a recurrence must be nonzero");
}

int PRecurrence::max_degree() const {
  int d = -1;
  for (const auto& p : polys) d = std::max(d, p.degree());
  return d;
}

namespace {

Polynomial poly(std::initializer_list<long> cs) {
  Polynomial p;
  for (long c : cs) p.coeffs.emplace_back(c);
  return p;
}


}  // namespace

PRecurrence builtin_a() {
  // P_1(m) = 2 m^2 at m = n+1; P_0(n) = -3 (9n^2 - 1).
  PRecurrence r;
  r.order = 1;
  r.offset = 1;
  r.polys = {poly({3, 0, -27}), poly({0, 0, 2})};
  r.label = "builtin:a";
  return r;
}

PRecurrence builtin_b() {
  // With m the index of the term multiplied:
  //   P_2(m) = m^2 (m - 1), P_1(m) = -2 m (6m^2 - 1), P_0(n) = n (2n-1)(2n+3).
  PRecurrence r;
  r.order = 2;
  r.offset = 1;
  r.polys = {poly({0, -3, 4, 4}), poly({0, 2, 0, -12}), poly({0, 0, -1, 1})};
  r.label = "builtin:b";
  return r;
}

PRecurrence builtin_c() {
  PRecurrence r;
  r.order = 3;
  r.offset = 1;
  r.polys = {
#include "builtin_c_polys.inc"
  };
  r.label = "builtin:c (reconstructed)";
  return r;
}

std::vector<Rational> builtin_initial(char which) {
  switch (which) {
    case 'a': return {Rational(0), Rational(1)};
    case 'b': return {Rational(0), Rational(1), Rational(5, 2)};
    case 'c': return {Rational(0), Rational(3), Rational(84), Rational(4935)};
    default: throw InputError(std::string("no builtin recurrence '") + which + "'");
  }
}

std::vector<Rational> extend(const PRecurrence& rec, const std::vector<Rational>& initial, int upto) {
  rec.validate();
  const int L = rec.order;
  if (static_cast<int>(initial.size()) < L + rec.offset) {
    throw InputError("extend needs at least order + offset = " + std::to_string(L + rec.offset) +
                     " initial terms");
  }
  std::vector<Rational> f = initial;
  if (upto < static_cast<int>(f.size()) - 1) f.resize(static_cast<std::size_t>(upto) + 1);
  Rational acc;
  for (int t = static_cast<int>(f.size()); t <= upto; ++t) {
    const int n = t - L;
    const Rational lead = rec.polys[static_cast<std::size_t>(L)](t);
    if (lead == 0) {
      throw RefusedError("leading polynomial vanishes at index " + std::to_string(t) + " (relation n = " +
                         std::to_string(n) + ")");
    }
    acc = 0;
    for (int i = 0; i < L; ++i) acc += rec.polys[static_cast<std::size_t>(i)](n + i) * f[static_cast<std::size_t>(n + i)];
    f.push_back(-acc / lead);
  }
  return f;
}

VerifyResult verify(const PRecurrence& rec, const std::vector<Rational>& seq) {
  rec.validate();
  VerifyResult out;
  out.pass = true;
  const int len = static_cast<int>(seq.size());
  Rational acc;
  for (int n = rec.offset; n + rec.order < len; ++n) {
    acc = 0;
    for (int i = 0; i <= rec.order; ++i) {
      acc += rec.polys[static_cast<std::size_t>(i)](n + i) * seq[static_cast<std::size_t>(n + i)];
    }
    ++out.checked;
    if (acc != 0) {
      out.pass = false;
      out.first_failure = n;
      return out;
    }
  }
  return out;
}

PRecurrence normalized(PRecurrence rec) {
  BigInt den = 1;
  for (const auto& p : rec.polys) {
    for (const auto& c : p.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  BigInt content = 0;
  for (auto& p : rec.polys) {
    for (auto& c : p.coeffs) {
      c *= Rational(den);
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
    }
  }
  if (content == 0) return rec;
  const auto& lead = rec.polys.back();
  const int top = lead.degree();
  if (top >= 0 && lead.coeffs[static_cast<std::size_t>(top)] < 0) content = -content;
  for (auto& p : rec.polys) {
    for (auto& c : p.coeffs) c /= Rational(content);
    while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
  }
  return rec;
}

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e != 0; e >>= 1, a = mulmod(a, a)) {
    if (e & 1) r = mulmod(r, a);
  }
  return r;
}

// Rank modulo a prime; never exceeds the rank over Q.
std::size_t modular_rank(const Matrix& m, std::size_t cols) {
  std::vector<std::vector<std::uint64_t>> a(m.size(), std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = mpz_fdiv_ui(m[i][j].get_mpz_t(), kPrime);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rank], a[p]);
    const std::uint64_t inv = powmod(a[rank][c], kPrime - 2);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t factor = mulmod(a[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] = (a[i][j] + kPrime - mulmod(factor, a[rank][j])) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) row echelon form in place; returns pivot columns.
std::vector<std::size_t> bareiss_echelon(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  BigInt t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t())) {
          throw std::logic_error("fraction-free elimination produced an inexact division");
        }
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// One nullspace basis vector per free column of the echelon form.
std::vector<std::vector<Rational>> nullspace(const Matrix& echelon, const std::vector<std::size_t>& pivots,
                                             std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const std::size_t pc = pivots[k];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (x[j] != 0 && echelon[k][j] != 0) acc += Rational(echelon[k][j]) * x[j];
      }
      x[pc] = -acc / Rational(echelon[k][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// Rows for relations n = first .. first+count-1, unknown (i, d) at column
// i*(degree+1) + d holding (n+i)^d f(n+i), scaled to integers.
Matrix relation_rows(const std::vector<Rational>& seq, int order, int degree, int first, int count) {
  const std::size_t cols = static_cast<std::size_t>((order + 1) * (degree + 1));
  Matrix rows;
  rows.reserve(static_cast<std::size_t>(count));
  for (int n = first; n < first + count; ++n) {
    BigInt scale = 1;
    for (int i = 0; i <= order; ++i) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), seq[static_cast<std::size_t>(n + i)].get_den_mpz_t());
    }
    std::vector<BigInt> row(cols);
    for (int i = 0; i <= order; ++i) {
      const Rational& v = seq[static_cast<std::size_t>(n + i)];
      BigInt base = v.get_num() * (scale / v.get_den());
      for (int d = 0; d <= degree; ++d) {
        row[static_cast<std::size_t>(i * (degree + 1) + d)] = base;
        base *= (n + i);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PRecurrence from_solution(const std::vector<Rational>& x, int order, int degree, int offset) {
  PRecurrence r;
  r.order = order;
  r.offset = offset;
  for (int i = 0; i <= order; ++i) {
    Polynomial p;
    for (int d = 0; d <= degree; ++d) p.coeffs.push_back(x[static_cast<std::size_t>(i * (degree + 1) + d)]);
    r.polys.push_back(std::move(p));
  }
  r.label = "guessed";
  return r;
}

}  // namespace

std::optional<PRecurrence> guess(const std::vector<Rational>& seq, int max_order, int max_degree,
                                 const GuessOptions& options) {
  if (max_order < 1 || max_degree < 0) throw InputError("guess needs max_order >= 1 and max_degree >= 0");
  const int surplus = options.surplus.value_or(std::max(5, max_order + 2));
  if (surplus < max_order + 2) throw InputError("guess needs surplus >= max_order + 2");
  int offset = 0;
  if (options.offset) {
    offset = *options.offset;
    if (offset < 0) throw InputError("guess offset must be non-negative");
  } else {
    while (offset < static_cast<int>(seq.size()) && seq[static_cast<std::size_t>(offset)] == 0) ++offset;
    if (offset == static_cast<int>(seq.size())) throw InputError("guess needs a sequence with a nonzero term");
  }
  const int len = static_cast<int>(seq.size());
  const int unknowns_max = (max_order + 1) * (max_degree + 1);
  const int needed = unknowns_max + max_order + surplus + offset - 1;
  if (len < needed) {
    throw InputError("guess with order <= " + std::to_string(max_order) + ", degree <= " +
                     std::to_string(max_degree) + ", surplus " + std::to_string(surplus) + " and offset " +
                     std::to_string(offset) + " needs " + std::to_string(needed) + " terms, got " +
                     std::to_string(len));
  }
  for (int order = 1; order <= max_order; ++order) {
    const int relations = len - order - offset;
    const int fit = relations - surplus;
    for (int degree = 0; degree <= max_degree; ++degree) {
      const auto cols = static_cast<std::size_t>((order + 1) * (degree + 1));
      Matrix rows = relation_rows(seq, order, degree, offset, fit);
      if (modular_rank(rows, cols) == cols) continue;
      auto pivots = bareiss_echelon(rows, cols);
      if (pivots.size() == cols) continue;
      for (const auto& x : nullspace(rows, pivots, cols)) {
        PRecurrence cand = from_solution(x, order, degree, offset);
        if (cand.polys.back().is_zero()) continue;
        if (verify(cand, seq).pass) {
          auto out = normalized(std::move(cand));
          out.label = "guessed";
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

bool equivalent_on(const PRecurrence& a, const PRecurrence& b, const std::vector<Rational>& initial, int upto) {
  return extend(a, initial, upto) == extend(b, initial, upto);
}

}  // namespace asmtree
