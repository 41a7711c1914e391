// Directed-rounding interval arithmetic at configurable precision.
//
// Every certified number in the checker is an IntervalScalar: a pair of MPFR
// endpoints with the lower bound always rounded toward -inf and the upper
// toward +inf, so each operation encloses the exact result for any
// representatives of its operands. Rounding is selected per MPFR call; there
// is no global rounding-mode state, so values are safe to use across threads.
#ifndef KSOL_INTERVAL_HPP
#define KSOL_INTERVAL_HPP

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ksol/rational.hpp"

namespace ksol {

enum class Sign { Positive, Negative, Unknown };

struct CapReached : std::runtime_error {
    CapReached() : std::runtime_error("precision cap reached") {}
};

// Working precision in bits. The floor of 11 bits is the coarsest precision
// any certified computation is allowed to run at.
struct Precision {
    static constexpr int kMinBits = 11;
    int bits;

    explicit Precision(int b) : bits(b) {
        if (b < kMinBits) throw std::invalid_argument("precision below 11 bits");
    }
};

// Doubles the working precision, clamped to `cap`; throws CapReached when
// already at the cap.
Precision refine_precision(Precision p, Precision cap);

class IntervalScalar {
  public:
    IntervalScalar() : IntervalScalar(Precision(53)) {}
    explicit IntervalScalar(Precision p);
    IntervalScalar(const IntervalScalar& o);
    IntervalScalar(IntervalScalar&& o) noexcept;
    IntervalScalar& operator=(const IntervalScalar& o);
    IntervalScalar& operator=(IntervalScalar&& o) noexcept;
    ~IntervalScalar();

    // Outward-rounded enclosure of q; exact (width 0) when q is a dyadic
    // rational representable at p bits.
    static IntervalScalar from_rational(const Rational& q, Precision p);
    // Enclosure of [lo, hi]; lo <= hi required.
    static IntervalScalar from_rationals(const Rational& lo, const Rational& hi, Precision p);
    static IntervalScalar exact_zero(Precision p) { return from_rational(Rational(0), p); }

    Precision precision() const { return Precision(prec_); }

    Sign sign() const;
    bool contains_zero() const;
    bool is_exact_zero() const;
    bool is_point() const;  // lower == upper
    bool contains(const Rational& q) const;
    // True when this and o intersect.
    bool overlaps(const IntervalScalar& o) const;
    // True when o is contained in this (endpoint-wise, <=).
    bool encloses(const IntervalScalar& o) const;

    double lower_double() const;  // rounded down
    double upper_double() const;  // rounded up
    double midpoint_double() const;
    double width_upper() const;  // upper bound of (upper - lower)
    // Exact endpoint values. Infinite endpoints are not representable as
    // rationals; callers must check is_bounded() first.
    Rational lower_rational() const;
    Rational upper_rational() const;
    bool is_bounded() const;

    // Decimal endpoint strings, outward rounded ("%.<digits>RDe"/"RUe").
    std::string decimal_lower(int digits) const;
    std::string decimal_upper(int digits) const;

    IntervalScalar operator-() const;
    friend IntervalScalar operator+(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator-(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator*(const IntervalScalar& a, const IntervalScalar& b);
    // Division requires 0 not in b.
    friend IntervalScalar operator/(const IntervalScalar& a, const IntervalScalar& b);
    IntervalScalar& operator+=(const IntervalScalar& b) { return *this = *this + b; }
    IntervalScalar& operator-=(const IntervalScalar& b) { return *this = *this - b; }
    IntervalScalar& operator*=(const IntervalScalar& b) { return *this = *this * b; }

    // Smallest interval containing both (at max precision of the two).
    static IntervalScalar hull(const IntervalScalar& a, const IntervalScalar& b);
    // Upper bound of max(|lower|, |upper|), as a point interval.
    IntervalScalar abs_upper() const;

    friend IntervalScalar iexp(const IntervalScalar& x);

  private:
    mpfr_t lo_, hi_;
    int prec_;

    static int join_prec(const IntervalScalar& a, const IntervalScalar& b);
};

// Enclosure of {e^x : x in the argument}. Monotone in containment. Overflow
// degrades to [huge, +inf).
IntervalScalar iexp(const IntervalScalar& x);

Sign sign_certified(const IntervalScalar& x);

// A fixed-length vector of interval components.
class IntervalVector {
  public:
    IntervalVector() = default;
    explicit IntervalVector(std::vector<IntervalScalar> comps) : comps_(std::move(comps)) {}
    static IntervalVector zeros(int dim, Precision p);
    static IntervalVector from_rationals(const QVector& q, Precision p);

    int dim() const { return static_cast<int>(comps_.size()); }
    const IntervalScalar& operator[](int i) const { return comps_[i]; }
    IntervalScalar& operator[](int i) { return comps_[i]; }
    bool all_exact_zero() const;
    Precision precision() const;

    // Enclosure of <q, x> for x in this box.
    IntervalScalar dot(const QVector& q) const;
    // Appends an exact-zero component (used to lift xi to (xi, 0)).
    IntervalVector lifted() const;

    auto begin() const { return comps_.begin(); }
    auto end() const { return comps_.end(); }

  private:
    std::vector<IntervalScalar> comps_;
};

}  // namespace ksol

#endif
