#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace isingq {

using rat = mpq_class;
using bigint = mpz_class;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline rat rat_from_string(const std::string& s) {
    rat r;
    try {
        r = rat(s, 10);
    } catch (const std::invalid_argument&) {
        throw domain_error("not a rational: '" + s + "'");
    }
    if (r.get_den() == 0) throw domain_error("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const rat& r) { return r.get_str(); }

inline bool rat_is_integer(const rat& r) { return r.get_den() == 1; }

inline long rat_to_long(const rat& r) {
    if (!rat_is_integer(r) || !r.get_num().fits_slong_p())
        throw domain_error("rational is not a small integer: " + r.get_str());
    return r.get_num().get_si();
}

// base^e for integer e, with base != 0 when e < 0
inline rat rat_pow(const rat& base, long e) {
    if (e == 0) return rat(1);
    if (base == 0) {
        if (e < 0) throw domain_error("0 raised to a negative power");
        return rat(0);
    }
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    bigint pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(pd.get_mpz_t(), base.get_den().get_mpz_t(), a);
    rat r = (e > 0) ? rat(pn, pd) : rat(pd, pn);
    r.canonicalize();
    return r;
}

enum class num_mode { exact, floating };

/* Dual-mode number: arbitrary-precision rational or double. A whole
 * computation runs in one mode; mixing modes in arithmetic is an error.
 * Exact equality is only decidable in exact mode; float comparisons go
 * through approx_eq with a caller-supplied tolerance. */
class scalar {
  public:
    scalar() : mode_(num_mode::exact), q_(0), d_(0) {}

    static scalar exact(rat v) {
        scalar s;
        s.mode_ = num_mode::exact;
        s.q_ = std::move(v);
        return s;
    }
    static scalar exact(long v) { return exact(rat(v)); }
    static scalar approx(double v) {
        scalar s;
        s.mode_ = num_mode::floating;
        s.d_ = v;
        return s;
    }

    num_mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == num_mode::exact; }

    const rat& ratio() const {
        if (!is_exact()) throw domain_error("ratio() on a float-mode scalar");
        return q_;
    }
    double value() const { return is_exact() ? q_.get_d() : d_; }

    bool is_zero() const { return is_exact() ? q_ == 0 : d_ == 0.0; }
    bool is_positive() const { return is_exact() ? q_ > 0 : d_ > 0.0; }

    scalar pow(long e) const {
        return is_exact() ? exact(rat_pow(q_, e)) : approx(std::pow(d_, static_cast<double>(e)));
    }

    friend scalar operator+(const scalar& a, const scalar& b) {
        check(a, b);
        return a.is_exact() ? exact(a.q_ + b.q_) : approx(a.d_ + b.d_);
    }
    friend scalar operator-(const scalar& a, const scalar& b) {
        check(a, b);
        return a.is_exact() ? exact(a.q_ - b.q_) : approx(a.d_ - b.d_);
    }
    friend scalar operator*(const scalar& a, const scalar& b) {
        check(a, b);
        return a.is_exact() ? exact(a.q_ * b.q_) : approx(a.d_ * b.d_);
    }
    friend scalar operator/(const scalar& a, const scalar& b) {
        check(a, b);
        if (b.is_zero()) throw domain_error("scalar division by zero");
        return a.is_exact() ? exact(a.q_ / b.q_) : approx(a.d_ / b.d_);
    }

    // decidable equality; exact mode only
    friend bool operator==(const scalar& a, const scalar& b) {
        check(a, b);
        if (!a.is_exact()) throw domain_error("exact comparison of float-mode scalars");
        return a.q_ == b.q_;
    }
    friend bool operator<(const scalar& a, const scalar& b) {
        check(a, b);
        return a.is_exact() ? a.q_ < b.q_ : a.d_ < b.d_;
    }

    bool approx_eq(const scalar& o, double tol) const {
        check(*this, o);
        if (is_exact()) return q_ == o.q_;
        double scale = std::max({1.0, std::fabs(d_), std::fabs(o.d_)});
        return std::fabs(d_ - o.d_) <= tol * scale;
    }

    std::string str() const { return is_exact() ? q_.get_str() : std::to_string(d_); }

  private:
    static void check(const scalar& a, const scalar& b) {
        if (a.mode_ != b.mode_) throw domain_error("mixed-mode scalar arithmetic");
    }

    num_mode mode_;
    rat q_;
    double d_;
};

}  // namespace isingq
