#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "qseries.hpp"

namespace isingq {

using partition = std::vector<long>;  // weakly decreasing positive parts

/* Kelleher's accelerated ascending-composition generator, reversed to the
 * descending convention. Deliberately a different algorithm from the
 * recursive enumerator in observables.hpp: the two sides of every oracle
 * comparison should not share code. */
inline std::vector<partition> partitions_of(long n) {
    std::vector<partition> out;
    if (n < 0) throw domain_error("partitions_of: negative n");
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<long> a(static_cast<size_t>(n) + 1, 0);
    long k = 1;
    a[1] = n;
    while (k != 0) {
        long x = a[static_cast<size_t>(k - 1)] + 1;
        long y = a[static_cast<size_t>(k)] - 1;
        --k;
        while (x <= y) {
            a[static_cast<size_t>(k)] = x;
            y -= x;
            ++k;
        }
        a[static_cast<size_t>(k)] = x + y;
        partition p(a.begin(), a.begin() + k + 1);
        std::reverse(p.begin(), p.end());
        out.push_back(std::move(p));
    }
    return out;
}

inline long distinct_sizes(const partition& p) {
    if (p.empty()) return 0;
    long k = 1;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) ++k;
    return k;
}

inline partition conjugate(const partition& p) {
    partition c;
    if (p.empty()) return c;
    for (long col = 1; col <= p[0]; ++col) {
        long h = 0;
        for (long part : p)
            if (part >= col) ++h;
        c.push_back(h);
    }
    return c;
}

/* Two-rowed array with strictly decreasing rows of possibly different
 * lengths; offset = first row length - second row length. The shorter
 * row's missing entries are conventionally drawn as dashes; here rows
 * simply have different lengths. The total follows the expansion
 * convention n = s1 + Sum a_i + Sum b_i. */
struct frobenius {
    std::vector<long> a, b;

    long offset() const { return static_cast<long>(a.size()) - static_cast<long>(b.size()); }
    long total() const {
        long t = static_cast<long>(a.size());
        for (long x : a) t += x;
        for (long x : b) t += x;
        return t;
    }
    bool valid() const {
        for (size_t i = 0; i + 1 < a.size(); ++i)
            if (a[i] <= a[i + 1]) return false;
        for (size_t i = 0; i + 1 < b.size(); ++i)
            if (b[i] <= b[i + 1]) return false;
        return (a.empty() || a.back() >= 0) && (b.empty() || b.back() >= 0);
    }

    /* The quantity the power of y counts: for two nonempty rows
     * 1 + #{a_i > a_{i+1}+1} + #{b_i > b_{i+1}+1} + 1{a_last != 0} 1{b_last != 0};
     * a one-sided symbol drops the leading 1 and keeps its own last-entry
     * term, so that pure staircases (Wright images of the empty partition)
     * count 0. */
    long y_stat() const {
        auto jumps = [](const std::vector<long>& r) {
            long j = 0;
            for (size_t i = 0; i + 1 < r.size(); ++i)
                if (r[i] > r[i + 1] + 1) ++j;
            return j;
        };
        if (a.empty() && b.empty()) return 0;
        if (b.empty()) return jumps(a) + (a.back() != 0 ? 1 : 0);
        if (a.empty()) return jumps(b) + (b.back() != 0 ? 1 : 0);
        return 1 + jumps(a) + jumps(b) + ((a.back() != 0 && b.back() != 0) ? 1 : 0);
    }

    bool operator==(const frobenius&) const = default;
    auto operator<=>(const frobenius&) const = default;
};

// classical offset-0 symbol read off the Young diagram diagonal
inline frobenius to_frobenius(const partition& p) {
    frobenius f;
    partition c = conjugate(p);
    for (size_t i = 0; i < p.size(); ++i) {
        long d = static_cast<long>(i) + 1;
        if (p[i] < d) break;
        f.a.push_back(p[i] - d);
        f.b.push_back(c[i] - d);
    }
    return f;
}

inline partition from_frobenius(const frobenius& f) {
    if (f.offset() != 0) throw domain_error("from_frobenius expects an offset-0 symbol");
    const long s = static_cast<long>(f.a.size());
    partition p;
    for (long i = 0; i < s; ++i) p.push_back(f.a[static_cast<size_t>(i)] + i + 1);
    for (long r = s;; ++r) {
        long len = 0;
        for (long j = 0; j < s; ++j)
            if (f.b[static_cast<size_t>(j)] + j + 1 > r) ++len;
        if (len == 0) break;
        p.push_back(len);
    }
    return p;
}

/* Wright bijection phi_m : FP_{0,k}(n) -> FP_{m,k}(n + m(m+1)/2), the
 * triangle-adjoining map, phrased on the hook sets A = {a_i + 1},
 * B = {b_i}. */
inline frobenius wright(const frobenius& f, long m) {
    if (f.offset() != 0) throw domain_error("wright expects an offset-0 symbol");
    std::set<long, std::greater<long>> A, B;
    for (long x : f.a) A.insert(x + 1);
    for (long x : f.b) B.insert(x);
    std::set<long, std::greater<long>> A2, B2;
    if (m >= 0) {
        for (long x : A) A2.insert(x + m);
        for (long x : B)
            if (x >= m) B2.insert(x - m);
        for (long x = 0; x < m; ++x)
            if (!B.count(x)) A2.insert(m - x);
    } else {
        const long mu = -m;
        for (long x : B) B2.insert(x + mu);
        for (long x : A)
            if (x > mu) A2.insert(x - mu);
        for (long x = 1; x <= mu; ++x)
            if (!A.count(x)) B2.insert(mu - x);
    }
    frobenius g;
    for (long x : A2) g.a.push_back(x - 1);
    for (long x : B2) g.b.push_back(x);
    return g;
}

// strictly decreasing rows of the given length with entries >= 0 summing to `sum`
namespace comb_detail {
inline void rows_rec(long len, long sum, long max_entry, std::vector<long>& cur,
                     std::vector<std::vector<long>>& out) {
    if (len == 0) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    const long floor_rest = (len - 1) * (len - 2) / 2;  // minimal sum of the remaining entries
    for (long e = std::min(max_entry, sum - floor_rest); e >= len - 1; --e) {
        cur.push_back(e);
        rows_rec(len - 1, sum - e, e - 1, cur, out);
        cur.pop_back();
    }
}
inline std::vector<std::vector<long>> decreasing_rows(long len, long sum) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    if (len == 0) {
        if (sum == 0) out.push_back({});
        return out;
    }
    rows_rec(len, sum, sum, cur, out);
    return out;
}
}  // namespace comb_detail

// all offset-m Frobenius symbols of total n, by direct two-row search
inline std::vector<frobenius> enumerate_fp(long m, long n) {
    std::vector<frobenius> out;
    for (long s2 = std::max(0L, -m);; ++s2) {
        const long s1 = s2 + m;
        const long budget = n - s1;
        if (budget < 0) break;
        const long mina = s1 * (s1 - 1) / 2, minb = s2 * (s2 - 1) / 2;
        if (budget < mina + minb) continue;
        for (long sa = mina; sa <= budget - minb; ++sa)
            for (const auto& ra : comb_detail::decreasing_rows(s1, sa))
                for (const auto& rb : comb_detail::decreasing_rows(s2, budget - sa))
                    out.push_back(frobenius{ra, rb});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* Three-variable Frobenius generating function Sum a_{n,m,k} Q^n z^m y^k,
 * enumerated two independent ways (Wright images of offset-0 symbols and
 * direct two-row search); the two must agree entry for entry. */
inline series fp_gen_function(int cap) {
    series s(cap);
    for (long n = 0; n <= cap; ++n) {
        for (long m = -(n + 1); m <= n + 1; ++m) {
            if (m * (m + 1) / 2 > n) continue;
            std::vector<frobenius> via_wright;
            long base = n - m * (m + 1) / 2;
            for (const auto& p : partitions_of(base)) via_wright.push_back(wright(to_frobenius(p), m));
            std::sort(via_wright.begin(), via_wright.end());
            std::vector<frobenius> direct = enumerate_fp(m, n);
            if (via_wright != direct)
                throw domain_error("Frobenius enumeration oracles disagree at n=" +
                                   std::to_string(n) + ", m=" + std::to_string(m));
            for (const auto& f : direct) s.add_term(n, {m, 2 * f.y_stat()}, rat(1));
        }
    }
    return s;
}

// number of partitions of n with k distinct part sizes
inline std::vector<long> distinct_size_counts(long n) {
    std::vector<long> a(static_cast<size_t>(n) + 2, 0);
    for (const auto& p : partitions_of(n)) ++a[static_cast<size_t>(distinct_sizes(p))];
    return a;
}

/* (m-1)-overpartitions: the first part of each size carries one of m
 * decorations. Counted as Sum_k m^k a_{n,k} and by explicitly enumerating
 * decoration tuples as a cross-check. */
inline long overpartition_count(long n, long m) {
    if (m < 1) throw domain_error("overpartition colour count must be >= 1");
    auto counts = distinct_size_counts(n);
    long via_sum = 0;
    for (size_t k = 0; k < counts.size(); ++k) {
        long mk = 1;
        for (size_t t = 0; t < k; ++t) mk *= m;
        via_sum += counts[k] * mk;
    }
    long via_decorations = 0;
    for (const auto& p : partitions_of(n)) {
        long k = distinct_sizes(p);
        std::vector<long> digits(static_cast<size_t>(k), 0);
        // walk all m^k decoration assignments
        while (true) {
            ++via_decorations;
            long i = 0;
            while (i < k && digits[static_cast<size_t>(i)] == m - 1) digits[static_cast<size_t>(i++)] = 0;
            if (i == k) break;
            ++digits[static_cast<size_t>(i)];
        }
    }
    if (via_sum != via_decorations)
        throw domain_error("overpartition cross-check failed at n=" + std::to_string(n));
    return via_sum;
}

/* The three components of the sector-identity y-exponent for a partition in its
 * occupation encoding: number of distinct sizes, the minimal partition
 * (one part of each size), and the partition of partial sums. */
struct partial_sum_stats {
    long k = 0;
    long minimal = 0;
    long partial_sums = 0;
    long exponent(long n) const { return n * k + minimal - partial_sums; }
};

inline partial_sum_stats partition_stats(const partition& p) {
    partial_sum_stats st;
    std::map<long, long> mult;
    for (long part : p) ++mult[part];
    st.k = static_cast<long>(mult.size());
    long suffix = 0;  // Sum_{j >= i} mult_j, walking sizes from the largest down
    for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
        suffix += it->second;
        st.minimal += it->first;
        st.partial_sums += suffix;
    }
    return st;
}

}  // namespace isingq
