#include "isolab/sturm.hpp"

#include <algorithm>
#include <array>

namespace isolab {

SturmSequence::SturmSequence(const RationalPolynomial& p) {
  if (p.is_zero()) throw UsageError("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    auto rem = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (rem.is_zero()) break;
    Rational scale = abs(rem.leading());
    chain_.push_back(rem * Rational(-1 / scale));
  }
}

int SturmSequence::variations(const Rational& t) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = sgn(q(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  return variations(lo) - variations(hi);
}

namespace {

// Interior split point of (lo, hi] that is not a root of p.
Rational split_point(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  static const std::array<std::pair<long, long>, 6> fractions{{{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 7}, {5, 11}}};
  for (auto [num, den] : fractions) {
    Rational m = lo + (hi - lo) * make_rational(num, den);
    if (p(m) != 0) return m;
  }
  // p has degree-many roots at most, so some dyadic point works.
  for (long k = 3;; ++k) {
    Rational m = lo + (hi - lo) * make_rational(1, (1L << k) + 1);
    if (p(m) != 0) return m;
  }
}

}  // namespace

std::vector<RootInterval> isolate_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi,
                                        int expected_roots) {
  SturmSequence sturm(p);
  if (!sturm.square_free()) throw InvariantViolation("polynomial has a multiple root");
  int total = sturm.count_roots(lo, hi);
  if (p(hi) == 0) --total;  // the interval of interest is open at hi
  if (expected_roots >= 0 && total != expected_roots)
    throw InvariantViolation("expected " + std::to_string(expected_roots) + " roots in (" + lo.get_str() + ", " +
                             hi.get_str() + "), found " + std::to_string(total));

  Rational top = hi;
  for (long k = 1; p(hi) == 0; ++k) {
    top = hi - (hi - lo) / Rational(mpz_class(1) << k);
    if (p(top) != 0 && sturm.count_roots(top, hi) == 1) break;
  }
  std::vector<RootInterval> out;
  std::vector<RootInterval> stack{{lo, top}};
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    const int count = sturm.count_roots(iv.lo, iv.hi);
    if (count == 0) continue;
    if (count == 1) {
      out.push_back(iv);
      continue;
    }
    Rational m = split_point(p, iv.lo, iv.hi);
    stack.push_back({m, iv.hi});
    stack.push_back({iv.lo, m});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<RootInterval> root_isolation(const RationalPolynomial& p) {
  return isolate_roots(p, Rational(-1), Rational(1), p.degree());
}

bool roots_interlace(const RationalPolynomial& inner, const RationalPolynomial& outer) {
  if (outer.degree() != inner.degree() + 1) throw UsageError("interlacing needs consecutive degrees");
  if (gcd(inner, outer).degree() > 0) return false;
  auto outer_roots = isolate_roots(outer, Rational(-1), Rational(1));
  if (static_cast<int>(outer_roots.size()) != outer.degree()) return false;
  if (inner.degree() == 0) return true;

  SturmSequence in(inner);
  SturmSequence out(outer);
  for (auto& iv : outer_roots) {
    while (in.count_roots(iv.lo, iv.hi) != 0) {
      Rational m = split_point(outer, iv.lo, iv.hi);
      if (out.count_roots(iv.lo, m) == 1)
        iv.hi = m;
      else
        iv.lo = m;
    }
  }
  if (in.count_roots(Rational(-1), outer_roots.front().lo) != 0) return false;
  if (in.count_roots(outer_roots.back().hi, Rational(1)) != 0) return false;
  for (std::size_t k = 0; k + 1 < outer_roots.size(); ++k)
    if (in.count_roots(outer_roots[k].hi, outer_roots[k + 1].lo) != 1) return false;
  return true;
}

}  // namespace isolab
