#pragma once

#include "qgrass/rational_function.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qgrass {

// Generator indices per algebra.  The index order is the PBW order: a word
// is in normal form when its generators appear with strictly increasing
// indices.
namespace gen {
// U_q(sl2): E < F < K
enum : int { UE = 0, UF = 1, UK = 2 };
// U (x) U: left factor before right factor
enum : int { LE = 0, LF = 1, LK = 2, RE = 3, RF = 4, RK = 5 };
// covering algebra: E1 < E2 < F1 < F2 < K1 < K2 < I
enum : int { E1 = 0, E2 = 1, F1 = 2, F2 = 3, K1 = 4, K2 = 5, I = 6 };
} // namespace gen

enum class Alg { U, UU, W };

struct GenPow {
    int g;
    long e;
    friend bool operator==(const GenPow& a, const GenPow& b) { return a.g == b.g && a.e == b.e; }
    friend bool operator<(const GenPow& a, const GenPow& b) {
        if (a.g != b.g) return a.g < b.g;
        return a.e < b.e;
    }
};
using Word = std::vector<GenPow>;

/// Exponent tuple addressing one PBW basis monomial.
using Mono = std::vector<long>;

/// Sparse element of one of the three fixed algebras: PBW monomial ->
/// coefficient, no zeros stored.
class PBW {
public:
    PBW() : alg_(Alg::W) {}
    explicit PBW(Alg a) : alg_(a) {}

    Alg alg() const { return alg_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<Mono, RatFun>& terms() const { return c_; }
    size_t size() const { return c_.size(); }

    void add(const Mono& m, const RatFun& c) {
        if (c.is_zero()) return;
        auto it = c_.find(m);
        if (it == c_.end()) {
            c_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    PBW& operator+=(const PBW& o) {
        check_alg(o);
        for (auto& [m, c] : o.c_) add(m, c);
        return *this;
    }
    PBW& operator-=(const PBW& o) {
        check_alg(o);
        for (auto& [m, c] : o.c_) add(m, -c);
        return *this;
    }
    friend PBW operator+(PBW a, const PBW& b) { return a += b; }
    friend PBW operator-(PBW a, const PBW& b) { return a -= b; }
    PBW operator-() const {
        PBW r(alg_);
        for (auto& [m, c] : c_) r.c_[m] = -c;
        return r;
    }
    PBW scaled(const RatFun& s) const {
        PBW r(alg_);
        if (s.is_zero()) return r;
        for (auto& [m, c] : c_) r.c_[m] = c * s;
        return r;
    }

    friend bool operator==(const PBW& a, const PBW& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }
    friend bool operator!=(const PBW& a, const PBW& b) { return !(a == b); }

    RatFun coeff(const Mono& m) const {
        auto it = c_.find(m);
        return it == c_.end() ? RatFun(0) : it->second;
    }

private:
    Alg alg_;
    std::map<Mono, RatFun> c_;
    void check_alg(const PBW& o) const {
        if (alg_ != o.alg_) throw internal_error("PBW: mixed algebra tags");
    }
};

enum class ReduceOrder { LeftmostFirst, RightmostFirst };

/// Rewriting system for one of the three fixed PBW presentations.  Out of
/// order adjacent pairs (g, h) with g > h reduce either by a q-power swap
/// g h = q^c h g or, for the F-then-E pairs, by the defining commutator
/// g h = h g + remainder where the remainder is a sum of K-type monomials.
class RewriteSystem {
public:
    explicit RewriteSystem(Alg a) : alg_(a) { build(); }

    Alg alg() const { return alg_; }
    int ngens() const { return ngens_; }
    bool invertible(int g) const { return invertible_[g]; }
    const std::string& name(int g) const { return names_[g]; }

    /// Test hook: perturb one remainder coefficient of the first F-then-E
    /// rule so the self-check suites have a fault to catch.
    void corrupt_first_rule() {
        if (fe_.empty()) return;
        auto& rem = fe_.begin()->second;
        rem.front().first += RatFun(1);
    }

    /// Reduce a word (with coefficient 1) to its PBW normal form.  Pending
    /// terms with identical words are merged, so the cost is bounded by the
    /// number of distinct intermediate words rather than reduction paths.
    PBW normal_form(const Word& w, ReduceOrder order = ReduceOrder::LeftmostFirst) const {
        PBW out(alg_);
        std::map<Word, RatFun> work;
        {
            Word w0 = w;
            compress(w0);
            work[std::move(w0)] = RatFun(1);
        }
        long steps = 0;
        const long guard = 2'000'000;
        auto enqueue = [&](Word t, const RatFun& c) {
            if (c.is_zero()) return;
            compress(t);
            auto [it, fresh] = work.try_emplace(std::move(t), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) work.erase(it);
            }
        };
        while (!work.empty()) {
            auto node = work.extract(work.begin());
            const Word& cur = node.key();
            const RatFun c = std::move(node.mapped());
            if (++steps > guard) throw internal_error("RewriteSystem: step guard exceeded");
            int pos = find_violation(cur, order);
            if (pos < 0) {
                out.add(word_to_mono(cur), c);
                continue;
            }
            const GenPow a = cur[pos], b = cur[pos + 1];
            auto fe = fe_.find({a.g, b.g});
            if (fe == fe_.end()) {
                // pure q-power swap
                long ce = swap_c_[a.g][b.g] * a.e * b.e;
                Word t = cur;
                t[pos] = b;
                t[pos + 1] = a;
                enqueue(std::move(t), c * RatFun::q_power(static_cast<int>(ce)));
            } else {
                // peel one letter of each and apply g h = h g + remainder
                Word head(cur.begin(), cur.begin() + pos);
                if (a.e > 1) head.push_back({a.g, a.e - 1});
                Word tail;
                if (b.e > 1) tail.push_back({b.g, b.e - 1});
                tail.insert(tail.end(), cur.begin() + pos + 2, cur.end());
                {
                    Word t = head;
                    t.push_back({b.g, 1});
                    t.push_back({a.g, 1});
                    t.insert(t.end(), tail.begin(), tail.end());
                    enqueue(std::move(t), c);
                }
                for (auto& [rc, rw] : fe->second) {
                    Word t = head;
                    t.insert(t.end(), rw.begin(), rw.end());
                    t.insert(t.end(), tail.begin(), tail.end());
                    enqueue(std::move(t), c * rc);
                }
            }
        }
        return out;
    }

    PBW monomial(const Mono& m, const RatFun& c = RatFun(1)) const {
        PBW r(alg_);
        r.add(m, c);
        return r;
    }

    PBW one() const { return monomial(Mono(ngens_, 0)); }

    PBW generator(int g, long e = 1) const {
        validate_gen(g, e);
        Mono m(ngens_, 0);
        m[g] = e;
        return monomial(m);
    }

    PBW element(const std::vector<std::pair<RatFun, Word>>& terms) const {
        PBW r(alg_);
        for (auto& [c, w] : terms) {
            for (auto& gp : w) validate_gen(gp.g, gp.e);
            r += normal_form(w).scaled(c);
        }
        return r;
    }

    static Word mono_to_word(const Mono& m) {
        Word w;
        for (int g = 0; g < (int)m.size(); ++g)
            if (m[g] != 0) w.push_back({g, m[g]});
        return w;
    }

    PBW mul(const PBW& x, const PBW& y) const {
        PBW r(alg_);
        for (auto& [mx, cx] : x.terms())
            for (auto& [my, cy] : y.terms()) {
                Word w = mono_to_word(mx);
                Word wy = mono_to_word(my);
                w.insert(w.end(), wy.begin(), wy.end());
                r += normal_form(w).scaled(cx * cy);
            }
        return r;
    }

    PBW pow(const PBW& x, int e) const {
        if (e < 0) throw domain_error("RewriteSystem::pow: negative exponent on an element");
        PBW r = one();
        PBW b = x;
        unsigned n = e;
        while (n) {
            if (n & 1) r = mul(r, b);
            if (n >>= 1) b = mul(b, b);
        }
        return r;
    }

    PBW bracket(const PBW& x, const PBW& y) const { return mul(x, y) - mul(y, x); }
    PBW q_bracket(const PBW& x, const PBW& y) const {
        return mul(x, y).scaled(RatFun::q_power(1)) - mul(y, x).scaled(RatFun::q_power(-1));
    }

    std::string mono_str(const Mono& m) const {
        std::string s;
        for (int g = 0; g < ngens_; ++g) {
            if (m[g] == 0) continue;
            if (!s.empty()) s += "*";
            s += names_[g];
            if (m[g] != 1) s += "^" + std::to_string(m[g]);
        }
        return s.empty() ? "1" : s;
    }

    std::string str(const PBW& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        for (auto& [m, c] : x.terms()) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")*" + mono_str(m);
        }
        return s;
    }

private:
    Alg alg_;
    int ngens_ = 0;
    std::vector<std::string> names_;
    std::vector<bool> invertible_;
    std::vector<std::vector<long>> swap_c_;
    std::map<std::pair<int, int>, std::vector<std::pair<RatFun, Word>>> fe_;

    void validate_gen(int g, long e) const {
        if (g < 0 || g >= ngens_) throw domain_error("unknown generator index");
        if (e < 0 && !invertible_[g]) throw domain_error("negative exponent on non-invertible generator " + names_[g]);
    }

    static void compress(Word& w) {
        size_t out = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i].e == 0) continue;
            if (out > 0 && w[out - 1].g == w[i].g) {
                w[out - 1].e += w[i].e;
                if (w[out - 1].e == 0) --out;
            } else {
                w[out++] = w[i];
            }
        }
        w.resize(out);
    }

    int find_violation(const Word& w, ReduceOrder order) const {
        if (order == ReduceOrder::LeftmostFirst) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (w[i].g > w[i + 1].g) return (int)i;
        } else {
            for (size_t i = w.size(); i-- > 1;)
                if (w[i - 1].g > w[i].g) return (int)(i - 1);
        }
        return -1;
    }

    Mono word_to_mono(const Word& w) const {
        Mono m(ngens_, 0);
        for (auto& gp : w) {
            if (m[gp.g] != 0) throw internal_error("word_to_mono: unsorted word");
            m[gp.g] = gp.e;
        }
        for (int g = 0; g < ngens_; ++g)
            if (m[g] < 0 && !invertible_[g]) throw internal_error("word_to_mono: negative E/F exponent");
        return m;
    }

    void set_swap(int g, int h, long c) { swap_c_[g][h] = c; }

    void build() {
        const RatFun inv_qq = RatFun(1) / (RatFun::q_power(1) - RatFun::q_power(-1));
        switch (alg_) {
        case Alg::U: {
            ngens_ = 3;
            names_ = {"E", "F", "K"};
            invertible_ = {false, false, true};
            swap_c_.assign(ngens_, std::vector<long>(ngens_, 0));
            set_swap(gen::UK, gen::UE, 2);  // K E = q^2 E K
            set_swap(gen::UK, gen::UF, -2); // K F = q^-2 F K
            // F E = E F - (K - K^-1)/(q - q^-1); the table holds the remainder
            fe_[{gen::UF, gen::UE}] = {
                {-inv_qq, {{gen::UK, 1}}},
                {inv_qq, {{gen::UK, -1}}},
            };
            break;
        }
        case Alg::UU: {
            ngens_ = 6;
            names_ = {"E.1", "F.1", "K.1", "E.2", "F.2", "K.2"};
            invertible_ = {false, false, true, false, false, true};
            swap_c_.assign(ngens_, std::vector<long>(ngens_, 0));
            set_swap(gen::LK, gen::LE, 2);
            set_swap(gen::LK, gen::LF, -2);
            set_swap(gen::RK, gen::RE, 2);
            set_swap(gen::RK, gen::RF, -2);
            fe_[{gen::LF, gen::LE}] = {
                {-inv_qq, {{gen::LK, 1}}},
                {inv_qq, {{gen::LK, -1}}},
            };
            fe_[{gen::RF, gen::RE}] = {
                {-inv_qq, {{gen::RK, 1}}},
                {inv_qq, {{gen::RK, -1}}},
            };
            break;
        }
        case Alg::W: {
            ngens_ = 7;
            names_ = {"E1", "E2", "F1", "F2", "K1", "K2", "I"};
            invertible_ = {false, false, false, false, true, true, true};
            swap_c_.assign(ngens_, std::vector<long>(ngens_, 0));
            set_swap(gen::K1, gen::E1, 2);
            set_swap(gen::K1, gen::F1, -2);
            set_swap(gen::K2, gen::E2, 2);
            set_swap(gen::K2, gen::F2, -2);
            // F1 E1 = E1 F1 - (K1 - I K1^-1)/(q - q^-1)
            fe_[{gen::F1, gen::E1}] = {
                {-inv_qq, {{gen::K1, 1}}},
                {inv_qq, {{gen::I, 1}, {gen::K1, -1}}},
            };
            // F2 E2 = E2 F2 - (I K2 - K2^-1)/(q - q^-1)
            fe_[{gen::F2, gen::E2}] = {
                {-inv_qq, {{gen::I, 1}, {gen::K2, 1}}},
                {inv_qq, {{gen::K2, -1}}},
            };
            break;
        }
        }
    }
};

/// The three rewriting systems are fixed; share one instance of each.
inline const RewriteSystem& system(Alg a) {
    static const RewriteSystem u(Alg::U), uu(Alg::UU), w(Alg::W);
    switch (a) {
    case Alg::U: return u;
    case Alg::UU: return uu;
    default: return w;
    }
}

/// Parse a generator word such as "F1*E1^2*K2^-1".  Accepted symbols depend
/// on the algebra; exponents on E/F generators must be nonnegative.
inline Word parse_word(const std::string& text, Alg alg) {
    const RewriteSystem& sys = system(alg);
    std::map<std::string, int> table;
    for (int g = 0; g < sys.ngens(); ++g) table[sys.name(g)] = g;
    Word w;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    if (i == text.size()) throw parse_error("empty expression");
    bool expect_factor = true;
    while (i < text.size()) {
        if (!expect_factor) {
            if (text[i] != '*') throw parse_error("expected '*' at position " + std::to_string(i));
            ++i;
            skip_ws();
        }
        size_t start = i;
        while (i < text.size() && (isalnum((unsigned char)text[i]) || text[i] == '.')) ++i;
        std::string name = text.substr(start, i - start);
        auto it = table.find(name);
        if (it == table.end()) throw parse_error("unknown generator '" + name + "'");
        long e = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip_ws();
            size_t es = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && isdigit((unsigned char)text[i])) ++i;
            if (i == es) throw parse_error("missing exponent after '^'");
            e = std::stol(text.substr(es, i - es));
        }
        if (e < 0 && !sys.invertible(it->second))
            throw parse_error("negative exponent on non-invertible generator '" + name + "'");
        w.push_back({it->second, e});
        skip_ws();
        expect_factor = false;
    }
    return w;
}

} // namespace qgrass
