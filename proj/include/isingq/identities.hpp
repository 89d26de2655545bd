#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "combinatorics.hpp"
#include "observables.hpp"
#include "qseries.hpp"

namespace isingq {

enum class run_kind { j_const, j_linear };  // J(i) = 1 and J(i) = i

struct run_profile {
    std::vector<long> ell;  // run lengths left of 0 (sentinel ell_0 = -1)
    std::vector<long> m;    // run lengths right of 0 (sentinel m_0 = 0)
};

namespace runs {

// suffix sums t_j = parts_j + ... + parts_last
inline std::vector<long> suffixes(const std::vector<long>& parts) {
    std::vector<long> t(parts.size() + 1, 0);
    for (size_t j = parts.size(); j > 0; --j) t[j - 1] = t[j] + parts[j - 1];
    return t;
}

/* Minimal Q-degree carried by a tuple in every expression it enters:
 * Sum_j l_j(l_j-1)/2 + Sum_{j>=2} (l_{j-1}+1) t_j on the ell side and the
 * same with the j=1 term (m_0+1) u_1 = u_1 present on the m side. */
inline long ell_degree(const std::vector<long>& parts) {
    auto t = suffixes(parts);
    long d = 0;
    for (size_t j = 0; j < parts.size(); ++j) {
        d += parts[j] * (parts[j] - 1) / 2;
        if (j >= 1) d += (parts[j - 1] + 1) * t[j];
    }
    return d;
}
inline long m_degree(const std::vector<long>& parts) {
    auto t = suffixes(parts);
    long d = 0;
    for (size_t j = 0; j < parts.size(); ++j) {
        d += parts[j] * (parts[j] - 1) / 2;
        d += ((j >= 1 ? parts[j - 1] : 0) + 1) * t[j];
    }
    return d;
}

// all length-len tuples of parts >= 1 whose degree functional stays <= cap
inline void tuples_rec(long len, long cap, bool mside, std::vector<long>& cur, long partial,
                       long tsuffix, const std::function<void(const std::vector<long>&)>& emit) {
    if (static_cast<long>(cur.size()) == len) {
        long full = partial + (mside ? tsuffix : 0);  // the (m_0+1) u_1 term
        if (full <= cap) emit(cur);
        return;
    }
    // choosing position j (1-based from the left) = len - cur.size(), walking right to left
    const bool innermost = cur.empty();
    for (long v = 1;; ++v) {
        long add = v * (v - 1) / 2 + (innermost ? 0 : (v + 1) * tsuffix);
        if (partial + add > cap) break;
        cur.insert(cur.begin(), v);
        tuples_rec(len, cap, mside, cur, partial + add, tsuffix + v, emit);
        cur.erase(cur.begin());
    }
}

inline std::vector<std::vector<long>> ell_tuples(long len, long cap) {
    std::vector<std::vector<long>> out;
    if (len == 0) {
        out.push_back({});
        return out;
    }
    std::vector<long> cur;
    tuples_rec(len, cap, false, cur, 0, 0, [&](const std::vector<long>& t) { out.push_back(t); });
    return out;
}
inline std::vector<std::vector<long>> m_tuples(long len, long cap) {
    std::vector<std::vector<long>> out;
    if (len == 0) {
        out.push_back({});
        return out;
    }
    std::vector<long> cur;
    tuples_rec(len, cap, true, cur, 0, 0, [&](const std::vector<long>& t) { out.push_back(t); });
    return out;
}

/* Closed forms of the constrained index sums over run positions:
 *   B_L^{(n)}: J=1: u^{2L} Prod_j Q^{(l_{j-1}+1)t_j} / (1 - Q^{t_j})
 *        J=i: u^{2Ln-Sum l} Prod_j (u^{-2(L-j+1)} Q^{t_j})^{l_{j-1}+1} / (1 - u^{-2(L-j+1)} Q^{t_j})
 *   A_R^{(n)}: J=1: u^{2R} Prod_j Q^{(m_{j-1}+1)u_j} / (1 - Q^{u_j})
 *        J=i: u^{2R(n-1)+Sum m} Prod_j (u^{2(R-j+1)} Q^{u_j})^{m_{j-1}+1} / (1 - u^{2(R-j+1)} Q^{u_j})
 * with l_0 = -1 and m_0 = 0. */
inline series B_closed(run_kind kind, long n, const std::vector<long>& ell, int cap) {
    const long L = static_cast<long>(ell.size());
    auto t = suffixes(ell);
    long qdeg = 0, uexp = 0;
    if (kind == run_kind::j_const) {
        uexp = 2 * L;
    } else {
        long sum = t.empty() ? 0 : t[0];
        uexp = 2 * L * n - sum;
    }
    std::vector<std::pair<long, long>> geos;  // (Q-degree, u-exponent of the geometric key)
    for (long j = 1; j <= L; ++j) {
        long prev = (j == 1) ? -1 : ell[static_cast<size_t>(j - 2)];
        long ukey = (kind == run_kind::j_const) ? 0 : -2 * (L - j + 1);
        qdeg += (prev + 1) * t[static_cast<size_t>(j - 1)];
        uexp += ukey * (prev + 1);
        geos.emplace_back(t[static_cast<size_t>(j - 1)], ukey);
    }
    series s = series::monomial(cap, qdeg, {0, uexp}, rat(1));
    for (auto& [b, uk] : geos) s.geometric_inverse(b, {0, uk}, rat(1));
    return s;
}

inline series A_closed(run_kind kind, long n, const std::vector<long>& m, int cap) {
    const long R = static_cast<long>(m.size());
    auto t = suffixes(m);
    long qdeg = 0, uexp = 0;
    if (kind == run_kind::j_const) {
        uexp = 2 * R;
    } else {
        long sum = t.empty() ? 0 : t[0];
        uexp = 2 * R * (n - 1) + sum;
    }
    std::vector<std::pair<long, long>> geos;
    for (long j = 1; j <= R; ++j) {
        long prev = (j == 1) ? 0 : m[static_cast<size_t>(j - 2)];
        long ukey = (kind == run_kind::j_const) ? 0 : 2 * (R - j + 1);
        qdeg += (prev + 1) * t[static_cast<size_t>(j - 1)];
        uexp += ukey * (prev + 1);
        geos.emplace_back(t[static_cast<size_t>(j - 1)], ukey);
    }
    series s = series::monomial(cap, qdeg, {0, uexp}, rat(1));
    for (auto& [b, uk] : geos) s.geometric_inverse(b, {0, uk}, rat(1));
    return s;
}

// b_L = B_L Q^{Sum l} (times y^{-L} when J = i); a_R = A_R Q^{Sum m} (times y^{R})
inline series b_closed(run_kind kind, long n, const std::vector<long>& ell, int cap) {
    long sum = 0;
    for (long v : ell) sum += v;
    long du = kind == run_kind::j_linear ? -2 * static_cast<long>(ell.size()) : 0;
    return B_closed(kind, n, ell, cap).mul_monomial(sum, {0, du}, rat(1));
}
inline series a_closed(run_kind kind, long n, const std::vector<long>& m, int cap) {
    long sum = 0;
    for (long v : m) sum += v;
    long du = kind == run_kind::j_linear ? 2 * static_cast<long>(m.size()) : 0;
    return A_closed(kind, n, m, cap).mul_monomial(sum, {0, du}, rat(1));
}

inline long half_sum(const std::vector<long>& parts) {
    long d = 0;
    for (long v : parts) d += v * (v - 1) / 2;
    return d;
}
inline long total(const std::vector<long>& parts) {
    long s = 0;
    for (long v : parts) s += v;
    return s;
}

}  // namespace runs

// ---- direct truncated index-tuple sums, the oracle route for the closed forms ----

struct run_sums_result {
    series A, B, a, b;
};

namespace runs {
inline long j_exp_right(run_kind kind, long n, long s, long m) {
    // u-exponent J(s+n-1) + J(s+m+n-1) of one right-run index
    return kind == run_kind::j_const ? 2 : 2 * s + 2 * n + m - 2;
}
inline long j_exp_left(run_kind kind, long n, long r, long l) {
    // u-exponent J(r+n) + J(r-l+n)
    return kind == run_kind::j_const ? 2 : 2 * r + 2 * n - l;
}

inline void right_sum_rec(run_kind kind, long n, const std::vector<long>& m, size_t j, long smin,
                          long qdeg, long uexp, int cap, series& out) {
    if (j == m.size()) {
        out.add_term(qdeg, {0, uexp}, rat(1));
        return;
    }
    for (long s = smin;; ++s) {
        long q2 = qdeg + s * m[j];
        if (q2 > cap) break;
        right_sum_rec(kind, n, m, j + 1, s + m[j] + 1, q2, uexp + j_exp_right(kind, n, s, m[j]),
                      cap, out);
    }
}
inline void left_sum_rec(run_kind kind, long n, const std::vector<long>& ell, size_t j, long rmax,
                         long qdeg, long uexp, int cap, series& out) {
    if (j == ell.size()) {
        out.add_term(qdeg, {0, uexp}, rat(1));
        return;
    }
    for (long r = rmax;; --r) {
        long q2 = qdeg - r * ell[j];
        if (q2 > cap) break;
        left_sum_rec(kind, n, ell, j + 1, r - ell[j] - 1, q2, uexp + j_exp_left(kind, n, r, ell[j]),
                     cap, out);
    }
}
}  // namespace runs

inline run_sums_result run_sums_direct(run_kind kind, long n, const run_profile& p, int cap) {
    run_sums_result r{series(cap), series(cap), series(cap), series(cap)};
    runs::right_sum_rec(kind, n, p.m, 0, 1, 0, 0, cap, r.A);
    runs::right_sum_rec(kind, n, p.m, 0, 2, 0, 0, cap, r.a);  // indicator s_1 > 1
    runs::left_sum_rec(kind, n, p.ell, 0, 0, 0, 0, cap, r.B);
    runs::left_sum_rec(kind, n, p.ell, 0, -1, 0, 0, cap, r.b);  // indicator r_1 < 0
    if (p.m.empty()) r.A = r.a = series::one(cap);
    if (p.ell.empty()) r.B = r.b = series::one(cap);
    return r;
}

inline run_sums_result run_sums_closed(run_kind kind, long n, const run_profile& p, int cap) {
    return {runs::A_closed(kind, n, p.m, cap), runs::B_closed(kind, n, p.ell, cap),
            runs::a_closed(kind, n, p.m, cap), runs::b_closed(kind, n, p.ell, cap)};
}

// ---- the named series and partition functions ----

namespace runs {
/* Side aggregates of the J == 1 expansions: for each run count, the sum of
 * Q^{l_j(l_j-1)/2 + j l_j + l_{j-1} t_j} z^{-+ parts} / Prod (1 - Q^{t_j})
 * over admissible tuples (S0), and the same with the extra Q^{Sum parts} of
 * the bracket (S1). */
struct j1_aggregates {
    std::vector<series> s0, s1;
};
inline j1_aggregates j1_side(int cap, bool mside) {
    j1_aggregates agg;
    for (long len = 0; (mside ? len * len : len * (len - 1)) <= cap; ++len) {
        series s0(cap), s1(cap);
        auto tuples = mside ? m_tuples(len, cap) : ell_tuples(len, cap);
        for (const auto& t : tuples) {
            long deg = mside ? m_degree(t) : ell_degree(t);
            long zexp = mside ? total(t) : -total(t);
            series f = series::monomial(cap, deg, {zexp, 0}, rat(1));
            auto suf = suffixes(t);
            for (size_t j = 0; j < t.size(); ++j) f.geometric_inverse(suf[j], {0, 0}, rat(1));
            s0 += f;
            s1 += f.mul_monomial(total(t), {0, 0}, rat(1));
        }
        agg.s0.push_back(std::move(s0));
        agg.s1.push_back(std::move(s1));
    }
    return agg;
}
}  // namespace runs

/* Z(Q,z,y): the three-variable run-profile expansion, combined per (L,R) as
 * y^{L+R} [ (1-y^{-1}) SL1 SR1 + y^{-1} SL0 SR0 ]. A fault-injection mode
 * drops the trailing y^{-1} bracket term for sensitivity checks. */
inline series z_j1_variant(int cap, bool drop_y_inverse_term) {
    series out(cap);
    auto SL = runs::j1_side(cap, false);
    auto SR = runs::j1_side(cap, true);
    for (size_t L = 0; L < SL.s0.size(); ++L)
        for (size_t R = 0; R < SR.s0.size(); ++R) {
            long base = 2 * static_cast<long>(L + R);
            series t1 = SL.s1[L] * SR.s1[R];
            out += t1.mul_monomial(0, {0, base}, rat(1));
            out -= t1.mul_monomial(0, {0, base - 2}, rat(1));
            if (!drop_y_inverse_term)
                out += (SL.s0[L] * SR.s0[R]).mul_monomial(0, {0, base - 2}, rat(1));
        }
    return out;
}

inline series z_j1(int cap) { return z_j1_variant(cap, false); }

// Z_{beta,q,c} for J = 1 via its run expansion; carries u = y^{1/2}
inline series ising_partition_function_runs(int cap) {
    series out(cap);
    auto SL = runs::j1_side(cap, false);
    auto SR = runs::j1_side(cap, true);
    for (size_t L = 0; L < SL.s0.size(); ++L)
        for (size_t R = 0; R < SR.s0.size(); ++R) {
            long base = 2 * static_cast<long>(L + R);
            out += (SL.s0[L] * SR.s0[R]).mul_monomial(0, {0, base - 1}, rat(1));
            series t1 = SL.s1[L] * SR.s1[R];
            out += t1.mul_monomial(0, {0, base + 1}, rat(1));
            out -= t1.mul_monomial(0, {0, base - 1}, rat(1));
        }
    return out;
}

// product form of the partition function: u Prod (1+(y-1)Q^i)(1+Q^i z)(1+Q^{i-1} z^{-1})
inline series cor12_product(int cap) {
    series s = series::monomial(cap, 0, {0, 1}, rat(1));
    s.mul_one_plus(0, {-1, 0}, rat(1));
    for (long i = 1; i <= cap; ++i) {
        s.mul_one_plus_poly({{i, {0, 2}, rat(1)}, {i, {0, 0}, rat(-1)}});
        s.mul_one_plus(i, {1, 0}, rat(1));
        s.mul_one_plus(i, {-1, 0}, rat(1));
    }
    return s;
}

// configuration-enumeration oracle: Sum_sigma u^{H_J} Q^{f_0/2} z^{N}
inline series brute_force_partition_function(int cap, const nn_kernel& J) {
    series out(cap);
    for (long n = -(cap + 1); n <= cap + 1; ++n) {
        if (n * (n + 1) / 2 > cap) continue;
        for (const auto& s : enumerate_spin_sector(n, cap)) {
            rat h = hamiltonian_nn(s, J);
            out.add_term(f0_half(s), {n, rat_to_long(h)}, rat(1));
        }
    }
    return out;
}

// Sum over the sector: Z mu(N=n) up to normalization-free weights
inline series brute_force_sector_mass(int cap, const nn_kernel& J, long n) {
    series out(cap);
    for (const auto& s : enumerate_spin_sector(n, cap))
        out.add_term(f0_half(s), {n, rat_to_long(hamiltonian_nn(s, J))}, rat(1));
    return out;
}

// Sum over sector 0 of u^{H_J + H_J^{(n)}} Q^{f_0/2}: the shift-based mass, by enumeration
inline series brute_force_shifted_mass(int cap, const nn_kernel& J, long n) {
    series out(cap);
    for (const auto& s : enumerate_spin_sector(0, cap)) {
        rat h = hamiltonian_nn(s, J) + shifted_hamiltonian_correction(s, J, n);
        out.add_term(f0_half(s), {0, rat_to_long(h)}, rat(1));
    }
    return out;
}

/* Z_n(Q,y): the sector identity family over balanced run profiles, aggregated per
 * (L, R, common total T). */
inline series z_ji(long n, int cap) {
    series out(cap);
    auto side = [&](bool mside) {
        // [len][T] -> aggregated series of dressed tuples with total T
        std::map<std::pair<long, long>, series> agg;
        for (long len = 0;; ++len) {
            long minimal = mside ? len * len : len * (len - 1);
            if (minimal > cap) break;
            auto tuples = mside ? runs::m_tuples(len, cap) : runs::ell_tuples(len, cap);
            for (const auto& t : tuples) {
                long T = runs::total(t);
                auto suf = runs::suffixes(t);
                long qdeg = runs::half_sum(t);
                long uexp = 0;
                series f(cap);
                std::vector<std::tuple<long, long>> geos;
                for (size_t j = 0; j < t.size(); ++j) {
                    long prev = j == 0 ? (mside ? 0 : -1) : t[j - 1];
                    long depth = static_cast<long>(t.size() - j);  // L-j+1 with 1-based j
                    long ukey = mside ? 2 * depth : -2 * depth;
                    qdeg += (prev + 1) * suf[j];
                    uexp += ukey * (prev + 1);
                    geos.emplace_back(suf[j], ukey);
                }
                if (qdeg > cap) continue;
                f = series::monomial(cap, qdeg, {0, uexp}, rat(1));
                for (auto& [b, uk] : geos) f.geometric_inverse(b, {0, uk}, rat(1));
                auto key = std::make_pair(len, T);
                auto it = agg.find(key);
                if (it == agg.end())
                    agg.emplace(key, f);
                else
                    it->second += f;
            }
        }
        return agg;
    };
    auto ells = side(false);
    auto ms = side(true);
    for (const auto& [lk, ls] : ells)
        for (const auto& [mk, msr] : ms) {
            if (lk.second != mk.second) continue;  // Sum m_j = Sum l_j
            const long L = lk.first, R = mk.first, T = lk.second;
            if ((L == 0) != (R == 0)) continue;  // balanced: one side empty forces both
            long pre = 2 * (n * L + (n - 1) * R);
            series prod = ls * msr;
            out += prod.mul_monomial(0, {0, pre - 2 * n}, rat(1));
            if (2 * T <= cap) {
                out += prod.mul_monomial(2 * T, {0, pre + 2 * (R - L)}, rat(1));
                out -= prod.mul_monomial(2 * T, {0, pre + 2 * (R - L) - 2 * n}, rat(1));
            }
        }
    return out;
}

// the partition-statistic enumeration side of Z_n(Q,y) (independent oracle)
inline series thm2_rhs(long n, int cap) {
    series out(cap);
    for (long size = 0; size <= cap; ++size)
        for (const auto& p : partitions_of(size)) {
            auto st = partition_stats(p);
            out.add_term(size, {0, 2 * st.exponent(n)}, rat(1));
        }
    return out;
}

/* Sector masses Z mu(N=n) via two run expansions: a shift-based one built
 * at sector 0 and a direct one with the run totals constrained to differ
 * by n. One-sided profiles are admitted, and the empty-side convention
 * A_0 = B_0 = a_0 = b_0 = 1 makes the ground term the (0,0) summand. */
inline series sector_mass_shifted(run_kind kind, long n, int cap) {
    series out(cap);
    const long jn = kind == run_kind::j_const ? 1 : n;
    std::map<std::pair<long, long>, series> BS, AS;
    for (long L = 0; L * (L - 1) <= cap; ++L)
        for (const auto& t : runs::ell_tuples(L, cap)) {
            series f = runs::B_closed(kind, n, t, cap).mul_monomial(runs::half_sum(t), {0, 0}, rat(1));
            auto key = std::make_pair(L, runs::total(t));
            auto it = BS.find(key);
            if (it == BS.end())
                BS.emplace(key, f);
            else
                it->second += f;
        }
    for (long R = 0; R * R <= cap; ++R)
        for (const auto& t : runs::m_tuples(R, cap)) {
            series f = runs::A_closed(kind, n, t, cap).mul_monomial(runs::half_sum(t), {0, 0}, rat(1));
            auto key = std::make_pair(R, runs::total(t));
            auto it = AS.find(key);
            if (it == AS.end())
                AS.emplace(key, f);
            else
                it->second += f;
        }
    for (const auto& [bk, bs] : BS)
        for (const auto& [ak, as] : AS) {
            if (bk.second != ak.second) continue;
            const long L = bk.first, R = ak.first, T = ak.second;
            if ((L == 0) != (R == 0)) continue;
            long phi = kind == run_kind::j_linear ? 2 * (R - L) : 0;
            series prod = bs * as;
            out += prod.mul_monomial(0, {0, -jn}, rat(1));
            if (2 * T <= cap) {
                out += prod.mul_monomial(2 * T, {0, phi + jn}, rat(1));
                out -= prod.mul_monomial(2 * T, {0, phi - jn}, rat(1));
            }
        }
    return out;
}

inline series sector_mass_direct(run_kind kind, long n, int cap) {
    series out(cap);
    const long j0 = kind == run_kind::j_const ? 1 : 0;
    std::map<std::pair<long, long>, series> BS, AS;
    for (long L = 0; L * (L - 1) <= cap; ++L)
        for (const auto& t : runs::ell_tuples(L, cap)) {
            series f = runs::B_closed(kind, 0, t, cap).mul_monomial(runs::half_sum(t), {0, 0}, rat(1));
            auto key = std::make_pair(L, runs::total(t));
            auto it = BS.find(key);
            if (it == BS.end())
                BS.emplace(key, f);
            else
                it->second += f;
        }
    for (long R = 0; R * R <= cap; ++R)
        for (const auto& t : runs::m_tuples(R, cap)) {
            series f = runs::A_closed(kind, 0, t, cap).mul_monomial(runs::half_sum(t), {0, 0}, rat(1));
            auto key = std::make_pair(R, runs::total(t));
            auto it = AS.find(key);
            if (it == AS.end())
                AS.emplace(key, f);
            else
                it->second += f;
        }
    for (const auto& [bk, bs] : BS)
        for (const auto& [ak, as] : AS) {
            const long L = bk.first, R = ak.first;
            const long Tl = bk.second, Tm = ak.second;
            if (Tm - Tl != n) continue;
            long phi = kind == run_kind::j_linear ? 2 * (R - L) : 0;
            series prod = bs * as;
            out += prod.mul_monomial(0, {n, -j0}, rat(1));
            if (Tl + Tm <= cap) {
                out += prod.mul_monomial(Tl + Tm, {n, phi + j0}, rat(1));
                out -= prod.mul_monomial(Tl + Tm, {n, phi - j0}, rat(1));
            }
        }
    return out;
}

/* Z mu(N=n) as a truncated series: built directly and through the shift
 * expression, cross-checked against the configuration enumeration; any
 * disagreement throws. */
inline series sector_mass(run_kind kind, long n, int cap) {
    series direct = sector_mass_direct(kind, n, cap);
    series shifted = sector_mass_shifted(kind, n, cap);
    series rel = shifted.mul_monomial(n * (n + 1) / 2, {n, 0}, rat(1));
    if (auto mm = direct.first_mismatch(rel))
        throw domain_error("sector mass: direct and shift-based expressions disagree at Q^" +
                           std::to_string(mm->qdeg));
    const nn_kernel J = kind == run_kind::j_const ? nn_kernel::constant() : nn_kernel::linear();
    if (auto mm = direct.first_mismatch(brute_force_sector_mass(cap, J, n)))
        throw domain_error("sector mass: run expansion disagrees with enumeration at Q^" +
                           std::to_string(mm->qdeg));
    return direct;
}

// ---- verification drivers ---------------------------------------------------

struct verify_report {
    std::string identity;
    int degree = 0;
    std::optional<long> n;
    bool pass = false;
    std::string detail;
    std::optional<series::mismatch> mismatch;
};

inline verify_report verify_thm1(int cap) {
    verify_report r{"thm1", cap, std::nullopt, false, "", std::nullopt};
    series lhs = theta(cap) * blocking_product(cap);
    series rhs = z_j1(cap);
    r.mismatch = lhs.first_mismatch(rhs);
    r.pass = !r.mismatch.has_value();
    r.detail = r.pass ? "theta * blocking product equals Z(Q,z,y) run expansion"
                      : "first mismatching coefficient found";
    return r;
}

inline verify_report verify_jtp(int cap) {
    verify_report r{"jtp", cap, std::nullopt, false, "", std::nullopt};
    series lhs = theta(cap);
    series rhs = jtp_product(cap);
    r.mismatch = lhs.first_mismatch(rhs);
    r.pass = !r.mismatch.has_value();
    r.detail = "Jacobi triple product";
    return r;
}

inline verify_report verify_thm2(long n, int cap) {
    verify_report r{"thm2", cap, n, false, "", std::nullopt};
    series lhs = z_ji(n, cap);
    series rhs = thm2_rhs(n, cap);
    r.mismatch = lhs.first_mismatch(rhs);
    r.pass = !r.mismatch.has_value();
    r.detail = "Z_n(Q,y) run expansion vs partition-statistic enumeration";
    return r;
}

inline verify_report verify_cor12(int cap) {
    verify_report r{"cor1_2", cap, std::nullopt, false, "", std::nullopt};
    series runsexp = ising_partition_function_runs(cap);
    series product = cor12_product(cap);
    series brute = brute_force_partition_function(cap, nn_kernel::constant());
    series uzj1 = z_j1(cap).mul_monomial(0, {0, 1}, rat(1));
    auto m1 = runsexp.first_mismatch(product);
    auto m2 = runsexp.first_mismatch(brute);
    auto m3 = runsexp.first_mismatch(uzj1);
    r.mismatch = m1 ? m1 : (m2 ? m2 : m3);
    r.pass = !m1 && !m2 && !m3;
    r.detail = "run expansion == product form == configuration enumeration == u*Z(Q,z,y)";
    return r;
}

/* beta = 0 comparison for the remark2_1 target: the published display puts
 * q^{2(i+c)} where the enumeration wants q^{2(i-c)}. The report confirms
 * which form matches and pinpoints the first coefficient where the display
 * fails. */
inline verify_report verify_remark21(int cap) {
    verify_report r{"remark2_1", cap, std::nullopt, false, "", std::nullopt};
    series brute(cap);
    for (long n = -(cap + 1); n <= cap + 1; ++n) {
        if (n * (n + 1) / 2 > cap) continue;
        for (const auto& s : enumerate_spin_sector(n, cap)) brute.add_term(f0_half(s), {n, 0}, rat(1));
    }
    series remark = series::one(cap);
    series corrected = series::one(cap);
    remark.mul_one_plus(0, {1, 0}, rat(1));      // (1 + Q^{i-1} z) at i = 1
    corrected.mul_one_plus(0, {-1, 0}, rat(1));  // (1 + Q^{i-1} z^{-1}) at i = 1
    for (long i = 1; i <= cap; ++i) {
        remark.mul_one_plus(i, {-1, 0}, rat(1));  // (1 + q^{2(i+c)}) = (1 + Q^i z^{-1})
        remark.mul_one_plus(i, {1, 0}, rat(1));
        corrected.mul_one_plus(i, {1, 0}, rat(1));  // (1 + q^{2(i-c)}) = (1 + Q^i z)
        corrected.mul_one_plus(i, {-1, 0}, rat(1));
    }
    auto mism_remark = brute.first_mismatch(remark);
    auto mism_cor = brute.first_mismatch(corrected);
    r.mismatch = mism_remark;
    r.pass = mism_remark.has_value() && !mism_cor.has_value();
    r.detail = mism_remark.has_value()
                   ? (mism_cor.has_value()
                          ? "neither form matches the enumeration"
                          : "c-sign discrepancy confirmed: the displayed beta=0 product differs "
                            "from the enumeration at the reported coefficient; the corrected "
                            "form (z and z^{-1} exchanged) matches exactly")
                   : "the displayed beta=0 product unexpectedly matches";
    return r;
}

inline verify_report verify_lemma4(int cap, unsigned seed = 20240817) {
    verify_report r{"lemma4", cap, std::nullopt, true, "", std::nullopt};
    std::mt19937 rng(seed);
    auto rnd = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    };
    long checked = 0;
    for (run_kind kind : {run_kind::j_const, run_kind::j_linear}) {
        for (int it = 0; it < 50 && r.pass; ++it) {
            run_profile p;
            long L = rnd(0, 3), R = rnd(0, 3);
            for (long j = 0; j < L; ++j) p.ell.push_back(rnd(1, 4));
            for (long j = 0; j < R; ++j) p.m.push_back(rnd(1, 4));
            long n = rnd(-2, 3);
            auto direct = run_sums_direct(kind, n, p, cap);
            auto closed = run_sums_closed(kind, n, p, cap);
            if (direct.A.first_mismatch(closed.A) || direct.B.first_mismatch(closed.B) ||
                direct.a.first_mismatch(closed.a) || direct.b.first_mismatch(closed.b)) {
                r.pass = false;
                r.detail = "closed form disagrees with direct summation";
                break;
            }
            // b_L = B_L Q^{Sum l} (J=1) resp. y^{-L} Q^{Sum l} B_L (J=i); same for a_R
            long du_b = kind == run_kind::j_linear ? -2 * L : 0;
            long du_a = kind == run_kind::j_linear ? 2 * R : 0;
            series brel = closed.B.mul_monomial(runs::total(p.ell), {0, du_b}, rat(1));
            series arel = closed.A.mul_monomial(runs::total(p.m), {0, du_a}, rat(1));
            if (closed.b.first_mismatch(brel) || closed.a.first_mismatch(arel)) {
                r.pass = false;
                r.detail = "b_L = B_L Q^{sum} / a_R = A_R Q^{sum} relation failed";
                break;
            }
            ++checked;
        }
    }
    // the assembled sector masses are part of the same family of relations
    if (r.pass) {
        try {
            for (run_kind kind : {run_kind::j_const, run_kind::j_linear})
                for (long n = -1; n <= 1; ++n) (void)sector_mass(kind, n, std::min(cap, 8));
        } catch (const domain_error& e) {
            r.pass = false;
            r.detail = e.what();
        }
    }
    if (r.pass) r.detail = "checked " + std::to_string(checked) + " random profiles per relation";
    return r;
}

inline verify_report verify(const std::string& id, int cap, std::optional<long> n = std::nullopt) {
    if (id == "thm1") return verify_thm1(cap);
    if (id == "jtp") return verify_jtp(cap);
    if (id == "cor1_2") return verify_cor12(cap);
    if (id == "thm2") return verify_thm2(n.value_or(0), cap);
    if (id == "lemma4") return verify_lemma4(cap);
    if (id == "remark2_1") return verify_remark21(cap);
    throw domain_error("unknown identity: " + id);
}

}  // namespace isingq
