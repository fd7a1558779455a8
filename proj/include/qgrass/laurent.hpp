#pragma once

#include "qgrass/rational.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace qgrass {

/// Laurent polynomial in q with rational coefficients, stored as a flat
/// vector of (exponent, coefficient) pairs sorted by ascending exponent.
/// No zero coefficient is ever stored, so structural equality is value
/// equality.
class Laurent {
public:
    using Term = std::pair<int, Rat>;

    Laurent() = default;
    Laurent(int c) { if (c != 0) t_.emplace_back(0, c); }
    Laurent(const Rat& c) { if (c != 0) t_.emplace_back(0, c); }

    static Laurent term(const Rat& c, int e) {
        Laurent p;
        if (c != 0) p.t_.emplace_back(e, c);
        return p;
    }
    static Laurent q_power(int e) { return term(1, e); }

    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
    bool is_monomial() const { return t_.size() == 1; }

    int min_exp() const { return t_.front().first; } // pre: not zero
    int max_exp() const { return t_.back().first; }  // pre: not zero

    const std::vector<Term>& terms() const { return t_; }

    Rat coeff(int e) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), e,
                                   [](const Term& t, int x) { return t.first < x; });
        return (it != t_.end() && it->first == e) ? it->second : Rat(0);
    }
    const Rat& leading_coeff() const { return t_.back().second; } // pre: not zero

    /// True when no negative exponent occurs (a genuine polynomial in q).
    bool is_polynomial() const { return t_.empty() || min_exp() >= 0; }

    void add_term(int e, const Rat& c) {
        if (c == 0) return;
        auto it = std::lower_bound(t_.begin(), t_.end(), e,
                                   [](const Term& t, int x) { return t.first < x; });
        if (it != t_.end() && it->first == e) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        } else {
            t_.insert(it, {e, c});
        }
    }

    Laurent& operator+=(const Laurent& o) { return *this = merged(*this, o, false); }
    Laurent& operator-=(const Laurent& o) { return *this = merged(*this, o, true); }
    friend Laurent operator+(const Laurent& a, const Laurent& b) { return merged(a, b, false); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return merged(a, b, true); }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        if (a.is_zero() || b.is_zero()) return r;
        if (a.is_monomial()) return b.shifted(a.min_exp()).scaled_inplace(a.t_[0].second);
        if (b.is_monomial()) return a.shifted(b.min_exp()).scaled_inplace(b.t_[0].second);
        // dense accumulator over the exponent span
        int lo = a.min_exp() + b.min_exp();
        int hi = a.max_exp() + b.max_exp();
        std::vector<Rat> acc(hi - lo + 1, Rat(0));
        for (auto& [ea, ca] : a.t_)
            for (auto& [eb, cb] : b.t_) acc[ea + eb - lo] += ca * cb;
        r.t_.reserve(acc.size());
        for (int i = 0; i < (int)acc.size(); ++i)
            if (acc[i] != 0) r.t_.emplace_back(lo + i, std::move(acc[i]));
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent scaled(const Rat& c) const {
        Laurent r = *this;
        return r.scaled_inplace(c);
    }

    /// Multiply by q^e.
    Laurent shifted(int e) const {
        Laurent r = *this;
        for (auto& t : r.t_) t.first += e;
        return r;
    }

    Laurent pow(unsigned n) const {
        Laurent r(1), b = *this;
        while (n) {
            if (n & 1) r *= b;
            if (n >>= 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
    friend bool operator<(const Laurent& a, const Laurent& b) { return a.t_ < b.t_; }

    /// Quotient of genuine polynomials; requires exact divisibility.
    static Laurent exact_div(const Laurent& a, const Laurent& b) {
        Laurent q, r;
        if (!divmod(a, b, q, r) || !r.is_zero()) throw internal_error("Laurent::exact_div: not divisible");
        return q;
    }

    /// Polynomial division a = q*b + r (deg r < deg b), for genuine
    /// polynomials b != 0.  Returns false if a or b has negative exponents.
    static bool divmod(const Laurent& a, const Laurent& b, Laurent& q, Laurent& r) {
        if (b.is_zero()) throw domain_error("Laurent::divmod: division by zero");
        if (!a.is_polynomial() || !b.is_polynomial()) return false;
        q = Laurent();
        r = a;
        int db = b.max_exp();
        const Rat& lb = b.leading_coeff();
        while (!r.is_zero() && r.max_exp() >= db) {
            int e = r.max_exp() - db;
            Rat c = r.leading_coeff() / lb;
            q.add_term(e, c);
            r -= b.shifted(e).scaled_inplace(c);
        }
        return true;
    }

    /// Monic gcd over Q[q] of two genuine polynomials (zero handled).
    /// Computed by a primitive remainder sequence over Z[q]: pseudo-division
    /// keeps the coefficients integral, content stripping keeps them small.
    static Laurent gcd_poly(Laurent a, Laurent b) {
        if (a.is_zero()) return b.is_zero() ? b : b.scaled_inplace(Rat(1) / b.leading_coeff());
        if (b.is_zero()) return a.scaled_inplace(Rat(1) / a.leading_coeff());
        std::vector<std::pair<int, Int>> u = to_primitive(a), v = to_primitive(b);
        if (deg(u) < deg(v)) std::swap(u, v);
        while (!v.empty()) {
            pseudo_mod(u, v);
            make_primitive(u);
            std::swap(u, v);
        }
        Laurent g;
        const Rat lc = u.back().second;
        for (auto& [e, c] : u) g.t_.emplace_back(e, Rat(c) / lc);
        return g;
    }

    /// Exact value at q = sqrt(N) as a pair (a, b) meaning a + b*sqrt(N).
    std::pair<Rat, Rat> eval_sqrt(long N) const {
        Rat a = 0, b = 0;
        for (auto& [e, c] : t_) {
            long m = e >= 0 ? e / 2 : -((-e + 1) / 2); // floor(e/2)
            if (e % 2 == 0) {
                a += c * rat_pow(Rat(N), e / 2);
            } else {
                // q^(2m+1) = N^m * sqrt(N)
                b += c * rat_pow(Rat(N), m);
            }
        }
        return {a, b};
    }

    /// Text form "c0*q^e0 + c1*q^e1 + ...", descending exponents; "0" when zero.
    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!first) os << " + ";
            os << rat_str(it->second) << "*q^" << it->first;
            first = false;
        }
        return os.str();
    }

private:
    std::vector<Term> t_;

    // ---- integer-polynomial helpers for the primitive remainder sequence
    using ZPoly = std::vector<std::pair<int, Int>>; // sorted, nonzero coeffs

    static int deg(const ZPoly& p) { return p.empty() ? -1 : p.back().first; }

    static ZPoly to_primitive(const Laurent& p) {
        Int lcm_den = 1;
        for (auto& [e, c] : p.t_) lcm_den = lcm(lcm_den, denominator(c));
        ZPoly z;
        z.reserve(p.t_.size());
        Int content = 0;
        for (auto& [e, c] : p.t_) {
            Int v = numerator(c) * (lcm_den / denominator(c));
            content = gcd(content, v);
            z.emplace_back(e, std::move(v));
        }
        if (content > 1)
            for (auto& [e, v] : z) v /= content;
        return z;
    }

    static void make_primitive(ZPoly& p) {
        Int content = 0;
        for (auto& [e, v] : p) content = gcd(content, v);
        if (content > 1)
            for (auto& [e, v] : p) v /= content;
        if (!p.empty() && p.back().second < 0)
            for (auto& [e, v] : p) v = -v;
    }

    static void zadd_scaled(ZPoly& a, const ZPoly& b, const Int& s, int shift) {
        ZPoly r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int eb = b[j].first + shift;
            if (a[i].first < eb) {
                r.push_back(std::move(a[i++]));
            } else if (a[i].first > eb) {
                r.emplace_back(eb, b[j].second * s);
                ++j;
            } else {
                Int c = a[i].second + b[j].second * s;
                if (c != 0) r.emplace_back(a[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        while (i < a.size()) r.push_back(std::move(a[i++]));
        while (j < b.size()) {
            r.emplace_back(b[j].first + shift, b[j].second * s);
            ++j;
        }
        a = std::move(r);
    }

    // u <- pseudo-remainder of u by v (deg u >= deg v >= 0)
    static void pseudo_mod(ZPoly& u, const ZPoly& v) {
        const Int& lv = v.back().second;
        while (deg(u) >= deg(v)) {
            Int lu = u.back().second;
            int sh = deg(u) - deg(v);
            for (auto& [e, c] : u) c *= lv;
            zadd_scaled(u, v, -lu, sh);
        }
    }

    Laurent& scaled_inplace(const Rat& c) {
        if (c == 0) {
            t_.clear();
            return *this;
        }
        if (c != 1)
            for (auto& t : t_) t.second *= c;
        return *this;
    }

    static Laurent merged(const Laurent& a, const Laurent& b, bool subtract) {
        Laurent r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            if (a.t_[i].first < b.t_[j].first) {
                r.t_.push_back(a.t_[i++]);
            } else if (a.t_[i].first > b.t_[j].first) {
                r.t_.push_back(b.t_[j]);
                if (subtract) r.t_.back().second = -r.t_.back().second;
                ++j;
            } else {
                Rat c = subtract ? Rat(a.t_[i].second - b.t_[j].second) : Rat(a.t_[i].second + b.t_[j].second);
                if (c != 0) r.t_.emplace_back(a.t_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j) {
            r.t_.push_back(b.t_[j]);
            if (subtract) r.t_.back().second = -r.t_.back().second;
        }
        return r;
    }
};

} // namespace qgrass
