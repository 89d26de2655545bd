#pragma once

#include <compare>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "rational.hpp"

namespace isingq {

/* Coefficients are Laurent polynomials in z and u, with u^2 = y. Tracking
 * u instead of y keeps every exponent integral: the y^{1/2} prefactor of
 * the partition function and the odd tanh arguments live at odd u-exponents. */
struct zu_key {
    long z = 0;
    long u = 0;
    auto operator<=>(const zu_key&) const = default;
};

using laurent = std::map<zu_key, rat>;  // invariant: no zero coefficients stored

inline void laurent_add(laurent& dst, const zu_key& k, const rat& v) {
    rat vc = v;
    vc.canonicalize();  // two-argument mpq_class constructions may arrive unreduced
    if (vc == 0) return;
    auto it = dst.find(k);
    if (it == dst.end()) {
        dst.emplace(k, std::move(vc));
    } else {
        it->second += vc;
        if (it->second == 0) dst.erase(it);
    }
}

/* Formal power series in Q truncated at degree cap; arithmetic is exact and
 * degrees beyond cap do not exist. z-exponents are bounded by cap+1, which
 * suffices because every z^m in scope is accompanied by Q-degree >= m(m+1)/2. */
class series {
  public:
    explicit series(int cap) : cap_(cap), c_(static_cast<size_t>(cap) + 1) {
        if (cap < 0) throw domain_error("series cap must be >= 0");
    }

    static series one(int cap) {
        series s(cap);
        s.add_term(0, {0, 0}, rat(1));
        return s;
    }
    static series monomial(int cap, long qdeg, zu_key k, const rat& v) {
        series s(cap);
        s.add_term(qdeg, k, v);
        return s;
    }

    int cap() const { return cap_; }
    const laurent& coeff(long qdeg) const { return c_.at(static_cast<size_t>(qdeg)); }
    rat coeff(long qdeg, zu_key k) const {
        const laurent& m = coeff(qdeg);
        auto it = m.find(k);
        return it == m.end() ? rat(0) : it->second;
    }

    void add_term(long qdeg, zu_key k, const rat& v) {
        if (qdeg < 0) throw domain_error("negative Q-degree");
        if (qdeg > cap_) return;
        if (k.z > cap_ + 1 || k.z < -(cap_ + 1))
            throw domain_error("z-exponent escaped its provable bound");
        laurent_add(c_[static_cast<size_t>(qdeg)], k, v);
    }

    series& operator+=(const series& o) {
        check(o);
        for (long d = 0; d <= cap_; ++d)
            for (const auto& [k, v] : o.c_[static_cast<size_t>(d)]) add_term(d, k, v);
        return *this;
    }
    series& operator-=(const series& o) {
        check(o);
        for (long d = 0; d <= cap_; ++d)
            for (const auto& [k, v] : o.c_[static_cast<size_t>(d)]) add_term(d, k, -v);
        return *this;
    }
    friend series operator+(series a, const series& b) { return a += b; }
    friend series operator-(series a, const series& b) { return a -= b; }

    friend series operator*(const series& a, const series& b) {
        a.check(b);
        series out(a.cap_);
        for (long da = 0; da <= a.cap_; ++da) {
            if (a.c_[static_cast<size_t>(da)].empty()) continue;
            for (long db = 0; da + db <= a.cap_; ++db) {
                if (b.c_[static_cast<size_t>(db)].empty()) continue;
                for (const auto& [ka, va] : a.c_[static_cast<size_t>(da)])
                    for (const auto& [kb, vb] : b.c_[static_cast<size_t>(db)])
                        out.add_term(da + db, {ka.z + kb.z, ka.u + kb.u}, va * vb);
            }
        }
        return out;
    }
    series& operator*=(const series& o) { return *this = *this * o; }

    // multiply by the monomial coeff * Q^qshift z^{k.z} u^{k.u}
    series mul_monomial(long qshift, zu_key k, const rat& v) const {
        series out(cap_);
        for (long d = 0; d + qshift <= cap_; ++d)
            for (const auto& [kk, vv] : c_[static_cast<size_t>(d)])
                out.add_term(d + qshift, {kk.z + k.z, kk.u + k.u}, vv * v);
        return out;
    }

    // *= 1 / (1 - v z^{k.z} u^{k.u} Q^b), b >= 1; the formal geometric expansion
    series& geometric_inverse(long b, zu_key k, const rat& v) {
        if (b < 1) throw domain_error("geometric_inverse needs Q-degree >= 1 in the factor");
        for (long d = b; d <= cap_; ++d) {
            laurent prev = c_[static_cast<size_t>(d - b)];
            for (const auto& [kk, vv] : prev) add_term(d, {kk.z + k.z, kk.u + k.u}, vv * v);
        }
        return *this;
    }

    // *= (1 + v z^{k.z} u^{k.u} Q^b)
    series& mul_one_plus(long b, zu_key k, const rat& v) {
        for (long d = cap_; d >= b; --d) {
            laurent lower = c_[static_cast<size_t>(d - b)];
            for (const auto& [kk, vv] : lower) add_term(d, {kk.z + k.z, kk.u + k.u}, vv * v);
        }
        return *this;
    }

    // *= (1 + Sum_t v_t z^.. u^.. Q^{b_t}); one factor with several terms
    series& mul_one_plus_poly(const std::vector<std::tuple<long, zu_key, rat>>& terms) {
        series orig = *this;
        for (const auto& [b, k, v] : terms) *this += orig.mul_monomial(b, k, v);
        return *this;
    }

    bool operator==(const series& o) const { return cap_ == o.cap_ && c_ == o.c_; }

    struct mismatch {
        long qdeg;
        zu_key key;
        rat lhs, rhs;
    };
    std::optional<mismatch> first_mismatch(const series& o) const {
        check(o);
        for (long d = 0; d <= cap_; ++d) {
            const laurent& A = c_[static_cast<size_t>(d)];
            const laurent& B = o.c_[static_cast<size_t>(d)];
            for (const auto& [k, v] : A) {
                auto it = B.find(k);
                rat bv = it == B.end() ? rat(0) : it->second;
                if (v != bv) return mismatch{d, k, v, bv};
            }
            for (const auto& [k, v] : B)
                if (A.find(k) == A.end()) return mismatch{d, k, rat(0), v};
        }
        return std::nullopt;
    }

    // evaluate the u-content at a numeric y (requires even u-exponents and no z)
    std::vector<rat> eval_y(const rat& y) const {
        std::vector<rat> out(static_cast<size_t>(cap_) + 1, rat(0));
        for (long d = 0; d <= cap_; ++d)
            for (const auto& [k, v] : c_[static_cast<size_t>(d)]) {
                if (k.z != 0) throw domain_error("eval_y: series still depends on z");
                if (k.u % 2 != 0) throw domain_error("eval_y: odd u-exponent, y-value ambiguous");
                out[static_cast<size_t>(d)] += v * rat_pow(y, k.u / 2);
            }
        return out;
    }

  private:
    void check(const series& o) const {
        if (cap_ != o.cap_) throw domain_error("series degree caps differ");
    }

    int cap_;
    std::vector<laurent> c_;
};

// Sum_{m in Z} Q^{m(m+1)/2} z^m, all m with m(m+1)/2 <= cap
inline series theta(int cap) {
    series s(cap);
    for (long m = 0; m * (m + 1) / 2 <= cap; ++m) s.add_term(m * (m + 1) / 2, {m, 0}, rat(1));
    for (long m = -1; m * (m + 1) / 2 <= cap; --m) s.add_term(m * (m + 1) / 2, {m, 0}, rat(1));
    return s;
}

// Prod_{i>=1} (1 + (y-1) Q^i) / (1 - Q^i); the two-variable partition count
inline series blocking_product(int cap) {
    series s = series::one(cap);
    for (long i = 1; i <= cap; ++i) {
        s.mul_one_plus_poly({{i, {0, 2}, rat(1)}, {i, {0, 0}, rat(-1)}});  // 1 + (y-1) Q^i
        s.geometric_inverse(i, {0, 0}, rat(1));
    }
    return s;
}

// Prod_{i>=1} (1 - Q^i)(1 + Q^i z)(1 + Q^{i-1} z^{-1}); Jacobi triple product RHS
inline series jtp_product(int cap) {
    series s = series::one(cap);
    s.mul_one_plus(0, {-1, 0}, rat(1));  // i = 1 factor of the z^{-1} family
    for (long i = 1; i <= cap; ++i) {
        s.mul_one_plus(i, {0, 0}, rat(-1));
        s.mul_one_plus(i, {1, 0}, rat(1));
        s.mul_one_plus(i, {-1, 0}, rat(1));  // Q^{(i+1)-1} z^{-1}
    }
    return s;
}

// Prod_{i>=1} 1/(1 - Q^i); ordinary partition generating function
inline series partition_gf(int cap) {
    series s = series::one(cap);
    for (long i = 1; i <= cap; ++i) s.geometric_inverse(i, {0, 0}, rat(1));
    return s;
}

}  // namespace isingq
