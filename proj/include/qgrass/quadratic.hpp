#pragma once

#include "qgrass/rational_function.hpp"

#include <optional>

namespace qgrass {

/// Element a + b*sqrt(N) of the real quadratic field Q(sqrt(N)), N a fixed
/// positive integer per computation.  A radicand of 0 marks a plain rational
/// literal that combines with any context; mixing two distinct nonzero
/// radicands is a context error.  Perfect-square radicands are folded into
/// the rational part so (a, b) determines the value.
class Quad {
public:
    Quad() = default;
    Quad(int a) : a_(a) {}
    Quad(const Rat& a) : a_(a) {}
    Quad(Rat a, Rat b, long N) : a_(std::move(a)), b_(std::move(b)), n_(N) { normalize(); }

    static Quad sqrt_n(long N) { return Quad(0, 1, N); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    long radicand() const { return n_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    friend Quad operator+(const Quad& x, const Quad& y) {
        long n = join(x, y);
        return Quad(x.a_ + y.a_, x.b_ + y.b_, n);
    }
    friend Quad operator-(const Quad& x, const Quad& y) {
        long n = join(x, y);
        return Quad(x.a_ - y.a_, x.b_ - y.b_, n);
    }
    friend Quad operator*(const Quad& x, const Quad& y) {
        long n = join(x, y);
        return Quad(x.a_ * y.a_ + Rat(n) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, n);
    }
    Quad operator-() const {
        Quad r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    Quad inverse() const {
        Rat nrm = a_ * a_ - Rat(n_) * b_ * b_;
        if (nrm == 0) {
            if (is_zero()) throw domain_error("Quad: division by zero");
            throw internal_error("Quad: zero norm for nonzero element (square radicand leak)");
        }
        return Quad(a_ / nrm, -b_ / nrm, n_);
    }
    friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }
    Quad& operator+=(const Quad& o) { return *this = *this + o; }
    Quad& operator-=(const Quad& o) { return *this = *this - o; }
    Quad& operator*=(const Quad& o) { return *this = *this * o; }
    Quad& operator/=(const Quad& o) { return *this = *this / o; }

    Quad pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Quad r(1), b = *this;
        unsigned n = e;
        while (n) {
            if (n & 1) r *= b;
            if (n >>= 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const Quad& x, const Quad& y) {
        if (x.n_ != y.n_ && x.n_ != 0 && y.n_ != 0) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
    friend bool operator<(const Quad& x, const Quad& y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    /// With q = sqrt(N): if the value equals q^e, return e (negative allowed).
    std::optional<int> as_q_power() const {
        if (n_ == 0) {
            // rational literal: only q^0 = 1 qualifies without a context
            if (a_ == 1 && b_ == 0) return 0;
            return std::nullopt;
        }
        auto npow = [&](const Rat& c) -> std::optional<int> {
            // c == N^m for some integer m?
            if (c <= 0) return std::nullopt;
            Rat v = c;
            int m = 0;
            while (v > 1) {
                v /= n_;
                ++m;
            }
            while (v < 1) {
                v *= n_;
                --m;
            }
            if (v == 1) return m;
            return std::nullopt;
        };
        if (b_ == 0) {
            auto m = npow(a_);
            if (m) return 2 * *m;
            return std::nullopt;
        }
        if (a_ == 0) {
            auto m = npow(b_);
            if (m) return 2 * *m + 1;
            return std::nullopt;
        }
        return std::nullopt;
    }

    std::string str() const { return rat_str(a_) + " + " + rat_str(b_) + "*sqrt(" + std::to_string(n_) + ")"; }

private:
    Rat a_ = 0, b_ = 0;
    long n_ = 0;

    void normalize() {
        if (n_ < 0) throw domain_error("Quad: radicand must be positive");
        if (n_ == 0) {
            if (b_ != 0) throw domain_error("Quad: sqrt part without a radicand");
            return;
        }
        long r = 0;
        while ((r + 1) * (r + 1) <= n_) ++r;
        if (r * r == n_) {
            a_ += b_ * r;
            b_ = 0;
        }
        if (b_ == 0 && a_ == 0) n_ = n_; // keep context even for zero
    }

    static long join(const Quad& x, const Quad& y) {
        if (x.n_ == 0) return y.n_;
        if (y.n_ == 0 || x.n_ == y.n_) return x.n_;
        throw domain_error("Quad: mixed radicands " + std::to_string(x.n_) + " and " + std::to_string(y.n_));
    }
};

/// Exact substitution q = sqrt(N).  Throws if the denominator vanishes there.
inline Quad specialize(const RatFun& x, long N) {
    auto [na, nb] = x.num().eval_sqrt(N);
    auto [da, db] = x.den().eval_sqrt(N);
    Quad n(na, nb, N), d(da, db, N);
    if (d.is_zero()) throw domain_error("specialize: denominator vanishes at q = sqrt(" + std::to_string(N) + ")");
    return n / d;
}

} // namespace qgrass
