#pragma once

#include "qgrass/laurent.hpp"

#include <optional>

namespace qgrass {

/// Element of Q(q), kept in canonical form: the denominator is a monic
/// genuine polynomial with nonzero constant term and gcd(num, den) = 1 over
/// Q[q, q^-1].  Canonical forms compare by structural equality.
class RatFun {
public:
    RatFun() = default;
    RatFun(int c) : num_(c) {}
    RatFun(const Rat& c) : num_(c) {}
    RatFun(Laurent n) : num_(std::move(n)) { canonicalize(); }
    RatFun(Laurent n, Laurent d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    static RatFun q_power(int e) { return RatFun(Laurent::q_power(e)); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        // scaling by a unit (c * q^e) keeps canonical form; skip the gcd
        if (b.den_.is_one() && b.num_.is_monomial()) {
            RatFun r;
            r.num_ = a.num_ * b.num_;
            r.den_ = a.den_;
            return r;
        }
        if (a.den_.is_one() && a.num_.is_monomial()) {
            RatFun r;
            r.num_ = a.num_ * b.num_;
            r.den_ = b.den_;
            return r;
        }
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw domain_error("RatFun: division by zero");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun operator-() const {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun inverse() const { return RatFun(1) / *this; }

    RatFun pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        RatFun r(1), b = *this;
        unsigned n = e;
        while (n) {
            if (n & 1) r *= b;
            if (n >>= 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
    friend bool operator<(const RatFun& a, const RatFun& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    /// If the value equals q^e exactly, return e.
    std::optional<int> as_q_power() const {
        if (!den_.is_one() || !num_.is_monomial()) return std::nullopt;
        if (num_.leading_coeff() != 1) return std::nullopt;
        return num_.max_exp();
    }

    /// If the value equals c * q^e with rational c, return (c, e).
    std::optional<std::pair<Rat, int>> as_monomial() const {
        if (!den_.is_one() || num_.is_zero() || !num_.is_monomial()) return std::nullopt;
        return std::make_pair(num_.leading_coeff(), num_.max_exp());
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    Laurent num_;
    Laurent den_ = Laurent(1);

    void canonicalize() {
        if (den_.is_zero()) throw domain_error("RatFun: zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent(1);
            return;
        }
        // Shift so the denominator is a genuine polynomial with nonzero
        // constant term; the same power of q multiplies the numerator.
        int s = -den_.min_exp();
        den_ = den_.shifted(s);
        num_ = num_.shifted(s);
        if (den_.is_monomial()) { // unit denominator: no gcd needed
            Rat lc = den_.leading_coeff();
            if (lc != 1) {
                den_ = Laurent(1);
                num_ = num_.scaled(Rat(1) / lc);
            } else {
                den_ = Laurent(1);
            }
            return;
        }
        // Cancel the gcd over Q[q, q^-1]: clear the numerator's lowest power
        // of q (a unit), take the polynomial gcd, divide out, restore.
        int sn = num_.min_exp();
        Laurent n0 = num_.shifted(-sn);
        Laurent g = Laurent::gcd_poly(n0, den_);
        if (!g.is_one()) {
            n0 = Laurent::exact_div(n0, g);
            den_ = Laurent::exact_div(den_, g);
        }
        num_ = n0.shifted(sn);
        // Monic denominator pins the scaling.
        Rat lc = den_.leading_coeff();
        if (lc != 1) {
            den_ = den_.scaled(Rat(1) / lc);
            num_ = num_.scaled(Rat(1) / lc);
        }
    }
};

/// [n]_q = (q^n - q^-n)/(q - q^-1), as a Laurent polynomial.
inline Laurent q_int_laurent(int n) {
    Laurent r;
    if (n == 0) return r;
    if (n < 0) return -q_int_laurent(-n);
    for (int i = 0; i < n; ++i) r.add_term(n - 1 - 2 * i, 1);
    return r;
}

inline RatFun q_int(int n) { return RatFun(q_int_laurent(n)); }

/// Gaussian binomial [n, l]_q = prod_{i=1}^{l} [n-i+1]_q / [l-i+1]_q.
inline RatFun q_binom(int n, int l) {
    if (l < 0) throw domain_error("q_binom: negative lower index");
    RatFun r(1);
    for (int i = 1; i <= l; ++i) r = r * q_int(n - i + 1) / q_int(l - i + 1);
    return r;
}

} // namespace qgrass
