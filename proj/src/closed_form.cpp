// Closed rational form of the steady state for n_nu = 0 and symmetric
// individual decay: rho_i = N_i / D with a common denominator D.
//
// The polynomials are kept term-for-term in their published order and
// grouping. Do not simplify or reorder them; the numeric solvers are the
// regression oracle for every entry (tests/unit/test_closed_form.cpp).
//
// Evaluation is in long double with Neumaier-compensated sums for every
// additive group.

#include <cmath>
#include <limits>

#include "ret/errors.hpp"
#include "ret/ness.hpp"

namespace ret {

namespace {

class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + carry_; }

 private:
  long double sum_ = 0;
  long double carry_ = 0;
};

template <class... T>
long double sum(T... terms) {
  CompensatedSum acc;
  (acc.add(static_cast<long double>(terms)), ...);
  return acc.value();
}

inline long double p2(long double x) { return x * x; }
inline long double p3(long double x) { return x * x * x; }
inline long double p4(long double x) { return p2(x) * p2(x); }
inline long double p5(long double x) { return p4(x) * x; }
inline long double p6(long double x) { return p3(x) * p3(x); }

// g = Gamma, gh = Gamma_h, dd = Delta, d1 = delta1, d2 = delta2, w = Omega.
struct Symbols {
  long double g, gh, dd, d1, d2, w;
};

long double denominator(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return sum(
          -sum(p2(g), 4.0L * p2(dd)) * p6(gh),
          sum(
              p2(g) * p2(d1),
              -2.0L * sum(5.0L * p2(g), 16.0L * p2(dd)) * d2 * d1,
              p2(g) * p2(d2),
              sum(p2(g), 4.0L * p2(dd)) * sum(3.0L * p2(g), -8.0L * p2(dd), -4.0L * p2(w))) * p4(gh),
          8.0L * g * dd * sum(
              sum(2.0L * p2(g), 8.0L * p2(dd), p2(w)) * d1,
              sum(2.0L * p2(g), 8.0L * p2(dd), -p2(w)) * d2) * p3(gh),
          -sum(
              3.0L * p6(g),
              4.0L * sum(3.0L * p2(dd), 2.0L * p2(w)) * p4(g),
              4.0L * sum(4.0L * p4(dd), 12.0L * p2(w) * p2(dd), p4(w)) * p2(g),
              -8.0L * p3(d1) * d2 * p2(g),
              2.0L * sum(3.0L * p4(g), 4.0L * sum(p2(dd), 4.0L * p2(w)) * p2(g), 64.0L * p2(dd) * p2(w)) * p2(d2),
              64.0L * p4(dd) * sum(p2(dd), p2(w)),
              -4.0L * d1 * d2 * sum(
                  3.0L * p4(g),
                  12.0L * p2(dd) * p2(g),
                  2.0L * p2(d2) * p2(g),
                  32.0L * p4(dd),
                  -2.0L * sum(3.0L * p2(g), 8.0L * p2(dd)) * p2(w)),
              2.0L * p2(d1) * sum(
                  3.0L * p4(g),
                  4.0L * sum(dd, -w) * sum(dd, w) * p2(g),
                  16.0L * sum(p2(g), 2.0L * p2(dd)) * p2(d2))) * p2(gh),
          -8.0L * g * dd * sum(
              2.0L * p2(g) * p3(d1),
              -2.0L * sum(p2(g), 2.0L * p2(w)) * d2 * p2(d1),
              sum(
                  2.0L * p4(g),
                  sum(8.0L * p2(dd), 5.0L * p2(w)) * p2(g),
                  -2.0L * sum(p2(g), -2.0L * p2(w)) * p2(d2),
                  4.0L * sum(dd, -w) * p2(w) * sum(dd, w)) * d1,
              d2 * sum(
                  2.0L * p4(g),
                  2.0L * p2(d2) * p2(g),
                  sum(8.0L * p2(dd), -5.0L * p2(w)) * p2(g),
                  -4.0L * p2(dd) * p2(w))) * gh,
          p2(g) * sum(
              4.0L * sum(p2(g), 8.0L * p2(w), 4.0L * p2(d1)) * p4(d2),
              -8.0L * d1 * sum(p2(g), 4.0L * p2(dd), 8.0L * p2(w), 4.0L * p2(d1)) * p3(d2),
              sum(
                  5.0L * p4(g),
                  24.0L * p2(dd) * p2(g),
                  16.0L * p4(dd),
                  -64.0L * p4(w),
                  32.0L * sum(p2(g), 5.0L * p2(dd)) * p2(w),
                  8.0L * p2(d1) * sum(3.0L * p2(g), 16.0L * p2(dd), 2.0L * p2(d1))) * p2(d2),
              -2.0L * d1 * sum(
                  p4(g),
                  24.0L * p2(dd) * p2(g),
                  80.0L * p4(dd),
                  -32.0L * p4(w),
                  4.0L * sum(p2(g), -4.0L * p2(dd)) * p2(w),
                  4.0L * sum(p2(g), 4.0L * sum(dd, -w) * sum(dd, w)) * p2(d1)) * d2,
              sum(p2(g), 4.0L * p2(dd), 2.0L * p2(w)) * sum(
                  16.0L * p4(w),
                  2.0L * sum(5.0L * p2(g), 4.0L * p2(dd)) * p2(w),
                  p2(sum(p2(g), 4.0L * p2(dd)))),
              p2(d1) * sum(
                  5.0L * p4(g),
                  4.0L * p2(d1) * p2(g),
                  24.0L * sum(p2(dd), p2(w)) * p2(g),
                  16.0L * sum(p4(dd), p4(w)))));
}

long double numerator_2(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return 4.0L * p2(w) * sum(
          p4(g) * p2(d1),
          -2.0L * p2(g) * d1 * d2 * sum(p2(g), -4.0L * p2(w)),
          4.0L * p2(g) * p4(d2),
          -8.0L * p2(g) * d1 * p3(d2),
          p2(d2) * sum(
              p2(g) * sum(5.0L * p2(g), 4.0L * p2(d1), 16.0L * p2(dd), -8.0L * p2(w)),
              -4.0L * sum(p2(g), 4.0L * p2(dd)) * p2(gh)),
          p2(g) * sum(p2(g), 4.0L * p2(dd), 2.0L * p2(w)) * sum(p2(g), -p2(gh), 2.0L * p2(w)));
}

long double numerator_3(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return 4.0L * p2(w) * sum(4.0L * p2(dd), p2(gh)) * sum(
          p2(g) * sum(p2(g), p2(sum(d1, -d2)), 4.0L * p2(dd), 2.0L * p2(w)),
          -sum(p2(g), 4.0L * p2(dd)) * p2(gh));
}

long double numerator_4(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return -4.0L * w * sum(
          p2(g) * sum(
              -2.0L * d2 * p2(d1) * sum(p2(g), 4.0L * p2(d2), 2.0L * p2(dd), -4.0L * p2(w)),
              -4.0L * d2 * p2(dd) * sum(p2(g), p2(d2), 4.0L * p2(dd), -4.0L * p2(w)),
              p3(d1) * sum(p2(g), 4.0L * p2(d2)),
              d1 * sum(
                  p4(g),
                  p2(d2) * sum(5.0L * p2(g), 4.0L * p2(d2), 24.0L * p2(dd), -8.0L * p2(w)),
                  4.0L * p2(g) * sum(p2(dd), p2(w)),
                  4.0L * p4(w))),
          d2 * -sum(p2(g), 4.0L * p2(dd)) * p4(gh),
          2.0L * g * dd * sum(p2(g), 4.0L * p2(dd)) * p3(gh),
          p2(gh) * sum(
              d2 * sum(p2(g), 4.0L * p2(dd)) * sum(p2(g), 4.0L * p2(dd), -4.0L * p2(w)),
              p2(g) * p3(d2),
              p2(g) * p2(d1) * d2,
              -d1 * sum(p4(g), 2.0L * p2(d2) * sum(3.0L * p2(g), 8.0L * p2(dd)), 4.0L * p2(g) * p2(dd))),
          -2.0L * g * dd * gh * sum(
              p4(g),
              sum(d1, -d2) * sum(p2(g) * d1, -d2 * sum(p2(g), 4.0L * p2(w))),
              4.0L * p2(g) * p2(dd),
              -4.0L * p4(w)));
}

long double numerator_5(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return 2.0L * w * sum(
          p3(g) * sum(
              p2(d2) * sum(5.0L * p2(g), 20.0L * p2(dd), -8.0L * p2(w)),
              -2.0L * d1 * d2 * sum(p2(g), 4.0L * p2(d2), 4.0L * p2(dd), -4.0L * p2(w)),
              p2(d1) * sum(p2(g), 4.0L * p2(d2), 4.0L * p2(dd)),
              p2(sum(p2(g), 4.0L * p2(dd), 2.0L * p2(w))),
              4.0L * p4(d2)),
          sum(p3(g), 4.0L * g * p2(dd)) * p4(gh),
          -g * p2(gh) * sum(
              p2(d2) * sum(5.0L * p2(g), 16.0L * p2(dd)),
              p2(g) * p2(d1),
              -2.0L * p2(g) * d1 * d2,
              2.0L * sum(p2(g), 4.0L * p2(dd)) * sum(p2(g), 2.0L * sum(p2(dd), p2(w)))),
          -8.0L * p2(g) * dd * gh * sum(d2 * sum(p2(g), 4.0L * p2(dd)), sum(d1, -d2) * sum(sum(d1, -d2) * d2, p2(w))),
          8.0L * d2 * dd * sum(p2(g), 4.0L * p2(dd)) * p3(gh));
}

long double numerator_6(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return -4.0L * w * sum(
          p2(g) * dd * sum(
              p2(d2) * sum(p2(g), 4.0L * sum(p2(dd), p2(w))),
              p2(d1) * sum(p2(g), 8.0L * p2(d2), 4.0L * p2(dd), -4.0L * p2(w)),
              -2.0L * d1 * d2 * sum(3.0L * sum(p2(g), 4.0L * p2(dd)), 2.0L * p2(d2)),
              p2(sum(p2(g), 4.0L * p2(dd))),
              -4.0L * p3(d1) * d2,
              -4.0L * p4(w)),
          g * sum(d1, d2) * sum(p2(g), 4.0L * p2(dd)) * p3(gh),
          dd * p2(gh) * sum(
              2.0L * d1 * d2 * sum(p2(g), 8.0L * p2(dd)),
              p2(g) * p2(d1),
              p2(g) * p2(d2),
              -4.0L * p2(dd) * sum(p2(g), 4.0L * p2(dd))),
          -dd * sum(p2(g), 4.0L * p2(dd)) * p4(gh),
          -g * gh * sum(
              p2(g) * p3(d1),
              -p2(g) * d2 * p2(d1),
              d1 * sum(p4(g), -p2(g) * p2(d2), 4.0L * p2(g) * sum(p2(dd), p2(w)), 8.0L * p2(dd) * p2(w)),
              d2 * sum(
                  p4(g),
                  p2(g) * p2(d2),
                  -4.0L * p2(w) * sum(p2(g), 2.0L * p2(dd)),
                  4.0L * p2(g) * p2(dd))));
}

long double numerator_7(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return 2.0L * w * sum(
          -4.0L * p3(g) * dd * sum(
              d1 * sum(p2(g), -p2(d2), 4.0L * sum(p2(dd), p2(w))),
              d2 * sum(p2(g), p2(d2), 4.0L * p2(dd), -4.0L * p2(w)),
              p3(d1),
              -d2 * p2(d1)),
          4.0L * g * dd * p2(gh) * sum(
              d1 * sum(p2(g), 4.0L * p2(dd), 2.0L * p2(w)),
              d2 * sum(p2(g), 4.0L * p2(dd), -2.0L * p2(w))),
          -sum(p2(g), 4.0L * p2(dd)) * p5(gh),
          p2(g) * gh * sum(
              -p4(g),
              -p2(d2) * sum(p2(g), -4.0L * p2(dd), 4.0L * p2(w)),
              -p2(d1) * sum(p2(g), 8.0L * p2(d2), -4.0L * sum(p2(dd), p2(w))),
              2.0L * d1 * d2 * sum(3.0L * p2(g), 2.0L * p2(d2), 4.0L * p2(dd)),
              4.0L * p3(d1) * d2,
              16.0L * p4(dd),
              4.0L * p4(w)),
          p3(gh) * sum(
              -2.0L * d2 * d1 * sum(3.0L * p2(g), 8.0L * p2(dd)),
              p2(g) * p2(d1),
              p2(g) * p2(d2),
              2.0L * sum(p4(g), 2.0L * p2(g) * p2(dd), -8.0L * p4(dd))));
}

long double numerator_8(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return -4.0L * p2(w) * sum(
          4.0L * p2(g) * dd * sum(d2 * sum(p2(g), 4.0L * p2(dd)), sum(d1, -d2) * sum(sum(d1, -d2) * d2, p2(w))),
          -sum(p3(g), 4.0L * g * p2(dd)) * p3(gh),
          -4.0L * d2 * dd * sum(p2(g), 4.0L * p2(dd)) * p2(gh),
          gh * sum(p3(g) * p2(sum(d1, -d2)), g * sum(p2(g), 4.0L * p2(dd)) * sum(p2(g), 2.0L * p2(w))));
}

long double numerator_9(const Symbols& s) {
  const auto [g, gh, dd, d1, d2, w] = s;
  return 8.0L * p2(w) * sum(
          p3(g) * dd * sum(p2(g), p2(sum(d1, -d2)), 4.0L * p2(dd), 2.0L * p2(w)),
          -p2(g) * gh * sum(d2 * sum(p2(g), 4.0L * p2(dd)), sum(d1, -d2) * sum(sum(d1, -d2) * d2, p2(w))),
          d2 * sum(p2(g), 4.0L * p2(dd)) * p3(gh),
          -g * dd * p2(gh) * sum(p2(g), 4.0L * p2(dd), 2.0L * p2(w)));
}

}  // namespace

ClosedFormTerms closed_form_terms(const SystemParams& p) {
  const Symbols s{p.gamma, p.gamma_h, p.coupling, p.delta1, p.delta2, p.rabi};
  ClosedFormTerms t;
  t.denominator = denominator(s);
  t.numerators[1] = numerator_2(s);
  t.numerators[2] = numerator_3(s);
  t.numerators[0] = sum(t.denominator, -t.numerators[1], -t.numerators[2]);
  t.numerators[3] = numerator_4(s);
  t.numerators[4] = numerator_5(s);
  t.numerators[5] = numerator_6(s);
  t.numerators[6] = numerator_7(s);
  t.numerators[7] = numerator_8(s);
  t.numerators[8] = numerator_9(s);
  return t;
}

NessSolution ness_closed_form(const SystemParams& p) {
  p.validate_admissible();
  if (p.n_nu != 0.0) {
    throw InvalidParameter("closed-form steady state requires n_nu = 0");
  }
  const ClosedFormTerms t = closed_form_terms(p);
  constexpr long double kGuard = 1e10L * std::numeric_limits<double>::min();
  if (!std::isfinite(t.denominator) || std::fabs(t.denominator) < kGuard) {
    throw IllConditionedClosedForm("closed-form denominator underflows; use a numeric solve");
  }
  Vector9 v;
  for (int i = 0; i < 9; ++i) v(i) = static_cast<double>(t.numerators[i] / t.denominator);

  NessSolution sol;
  sol.state = StateVector9(v);
  sol.method = NessMethod::ClosedForm;
  const LiouvilleMatrix m = build_matrix(p);
  sol.residual = (m.matrix * v).cwiseAbs().maxCoeff();
  sol.spectral_gap = spectral_gap(spectrum(m));
  return sol;
}

}  // namespace ret
