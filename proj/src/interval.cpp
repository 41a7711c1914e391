#include "ksol/interval.hpp"

#include <algorithm>
#include <cstdio>

namespace ksol {

Precision refine_precision(Precision p, Precision cap) {
    if (p.bits >= cap.bits) throw CapReached();
    return Precision(std::min(p.bits * 2, cap.bits));
}

IntervalScalar::IntervalScalar(Precision p) : prec_(p.bits) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

IntervalScalar::IntervalScalar(const IntervalScalar& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalScalar::IntervalScalar(IntervalScalar&& o) noexcept : prec_(o.prec_) {
    lo_[0] = o.lo_[0];
    hi_[0] = o.hi_[0];
    // leave the source valid for its destructor
    mpfr_init2(o.lo_, MPFR_PREC_MIN);
    mpfr_init2(o.hi_, MPFR_PREC_MIN);
}

IntervalScalar& IntervalScalar::operator=(const IntervalScalar& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

IntervalScalar& IntervalScalar::operator=(IntervalScalar&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
    return *this;
}

IntervalScalar::~IntervalScalar() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

IntervalScalar IntervalScalar::from_rational(const Rational& q, Precision p) {
    IntervalScalar r(p);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

IntervalScalar IntervalScalar::from_rationals(const Rational& lo, const Rational& hi, Precision p) {
    if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
    IntervalScalar r(p);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

int IntervalScalar::join_prec(const IntervalScalar& a, const IntervalScalar& b) {
    return std::max(a.prec_, b.prec_);
}

Sign IntervalScalar::sign() const {
    if (mpfr_sgn(lo_) > 0) return Sign::Positive;
    if (mpfr_sgn(hi_) < 0) return Sign::Negative;
    return Sign::Unknown;
}

bool IntervalScalar::contains_zero() const { return sign() == Sign::Unknown; }

bool IntervalScalar::is_exact_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }

bool IntervalScalar::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool IntervalScalar::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool IntervalScalar::overlaps(const IntervalScalar& o) const {
    return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

bool IntervalScalar::encloses(const IntervalScalar& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_);
}

double IntervalScalar::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double IntervalScalar::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double IntervalScalar::midpoint_double() const {
    return 0.5 * (lower_double() + upper_double());
}

double IntervalScalar::width_upper() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool IntervalScalar::is_bounded() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

static Rational mpfr_to_rational(const mpfr_t x) {
    if (!mpfr_number_p(x)) throw std::domain_error("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    Rational r(q);
    mpq_clear(q);
    return r;
}

Rational IntervalScalar::lower_rational() const { return mpfr_to_rational(lo_); }
Rational IntervalScalar::upper_rational() const { return mpfr_to_rational(hi_); }

static std::string format_endpoint(const mpfr_t x, int digits, const char* spec) {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, spec, digits, x);
    return buf;
}

std::string IntervalScalar::decimal_lower(int digits) const {
    return format_endpoint(lo_, digits, "%.*RDe");
}

std::string IntervalScalar::decimal_upper(int digits) const {
    return format_endpoint(hi_, digits, "%.*RUe");
}

IntervalScalar IntervalScalar::operator-() const {
    IntervalScalar r{Precision(prec_)};
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

IntervalScalar operator+(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r{Precision(IntervalScalar::join_prec(a, b))};
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

IntervalScalar operator-(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r{Precision(IntervalScalar::join_prec(a, b))};
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

IntervalScalar operator*(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r{Precision(IntervalScalar::join_prec(a, b))};
    // exact-zero short circuit keeps 0 * x == 0 even for unbounded x
    if (a.is_exact_zero() || b.is_exact_zero()) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_set_zero(r.hi_, 1);
        return r;
    }
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

IntervalScalar operator/(const IntervalScalar& a, const IntervalScalar& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by interval containing 0");
    IntervalScalar r{Precision(IntervalScalar::join_prec(a, b))};
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

IntervalScalar IntervalScalar::hull(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r{Precision(join_prec(a, b))};
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

IntervalScalar IntervalScalar::abs_upper() const {
    IntervalScalar r{Precision(prec_)};
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_abs(r.hi_, lo_, MPFR_RNDU);
    mpfr_abs(t, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
    mpfr_clear(t);
    return r;
}

IntervalScalar iexp(const IntervalScalar& x) {
    IntervalScalar r{Precision(x.prec_)};
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Sign sign_certified(const IntervalScalar& x) { return x.sign(); }

IntervalVector IntervalVector::zeros(int dim, Precision p) {
    std::vector<IntervalScalar> c;
    c.reserve(dim);
    for (int i = 0; i < dim; ++i) c.push_back(IntervalScalar::exact_zero(p));
    return IntervalVector(std::move(c));
}

IntervalVector IntervalVector::from_rationals(const QVector& q, Precision p) {
    std::vector<IntervalScalar> c;
    c.reserve(q.size());
    for (const auto& x : q) c.push_back(IntervalScalar::from_rational(x, p));
    return IntervalVector(std::move(c));
}

bool IntervalVector::all_exact_zero() const {
    for (const auto& c : comps_)
        if (!c.is_exact_zero()) return false;
    return true;
}

Precision IntervalVector::precision() const {
    int bits = Precision::kMinBits;
    for (const auto& c : comps_) bits = std::max(bits, c.precision().bits);
    return Precision(bits);
}

IntervalScalar IntervalVector::dot(const QVector& q) const {
    if (static_cast<size_t>(dim()) != q.size())
        throw std::invalid_argument("IntervalVector::dot dimension mismatch");
    IntervalScalar s = IntervalScalar::exact_zero(precision());
    for (int i = 0; i < dim(); ++i)
        s += comps_[i] * IntervalScalar::from_rational(q[i], precision());
    return s;
}

IntervalVector IntervalVector::lifted() const {
    std::vector<IntervalScalar> c(comps_);
    c.push_back(IntervalScalar::exact_zero(precision()));
    return IntervalVector(std::move(c));
}

}  // namespace ksol
