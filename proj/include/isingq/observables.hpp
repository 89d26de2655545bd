#pragma once

#include <vector>

#include "config.hpp"
#include "model.hpp"

namespace isingq {

// N(sigma) = #{i >= 1 : sigma_i = -1} - #{i <= 0 : sigma_i = +1}
inline long conserved_N(const spin_config& s) {
    long nminus = 0, nplus = 0;
    if (s.start > 1) nminus += s.start - 1;  // sites 1..start-1 are -1
    const long we = s.window_end();
    if (we <= 0) nplus += 1 - we;  // sites we..0 are +1
    for (long i = s.start; i < we; ++i) {
        if (i >= 1 && s.spin(i) < 0) ++nminus;
        if (i <= 0 && s.spin(i) > 0) ++nplus;
    }
    return nminus - nplus;
}

// f_0(sigma)/2 = Sum_{i>=1} i 1{sigma_i=-1} - Sum_{i<=0} i 1{sigma_i=+1}; the Q-degree
inline long f0_half(const spin_config& s) {
    long acc = 0;
    if (s.start > 1) acc += (s.start - 1) * s.start / 2;
    const long we = s.window_end();
    if (we <= 0) acc -= (we + 0) * (1 - we) / 2;  // -(we + ... + 0)
    for (long i = s.start; i < we; ++i) {
        if (i >= 1 && s.spin(i) < 0) acc += i;
        if (i <= 0 && s.spin(i) > 0) acc -= i;
    }
    return acc;
}

// f_c(sigma) = f_0(sigma) - 2 c N(sigma)
inline rat field_fc(const spin_config& s, const rat& c) {
    return rat(2 * f0_half(s)) - 2 * c * conserved_N(s);
}

// (tau^k sigma)_i = sigma_{i+k}
inline spin_config shift(const spin_config& s, long k) {
    return spin_config{s.start - k, s.window};
}

inline rat hamiltonian_nn(const spin_config& s, const nn_kernel& J) {
    rat h(0);
    for (long i = s.start - 1; i < s.window_end(); ++i)
        if (s.spin(i) != s.spin(i + 1)) h += J.at(i);
    return h;
}

// number of disagreeing pairs (i, i+d); closed form outside the window
inline long disagreements_at_distance(const spin_config& s, long d) {
    const long len = static_cast<long>(s.window.size());
    long count = std::max(0L, d - len);
    for (long p = s.start; p < s.window_end(); ++p) {
        if (p < s.start + d && s.spin(p) > 0) ++count;  // left endpoint in the minus ray
        if (s.spin(p) != s.spin(p + d)) ++count;
    }
    return count;
}

inline rat hamiltonian_lr(const spin_config& s, const lr_kernel& J) {
    rat h(0);
    if (J.nn_embedded) {
        for (long i = s.start - 1; i < s.window_end(); ++i)
            if (s.spin(i) != s.spin(i + 1)) h += J.nn_embedded->at(i);
        return h;
    }
    for (long d = 1; d <= static_cast<long>(J.by_distance.size()); ++d)
        h += J.by_distance[d - 1] * disagreements_at_distance(s, d);
    return h;
}

inline scalar hamiltonian(const spin_config& s, const interaction_kernel& k, num_mode mode) {
    if (is_nn(k)) {
        rat h = hamiltonian_nn(s, std::get<nn_kernel>(k));
        return mode == num_mode::exact ? scalar::exact(h) : scalar::approx(h.get_d());
    }
    const lr_kernel& J = std::get<lr_kernel>(k);
    if (mode == num_mode::exact) {
        if (J.has_tail)
            throw domain_error("exact mode requires a finite-support long-range kernel");
        return scalar::exact(hamiltonian_lr(s, J));
    }
    double h = hamiltonian_lr(s, J).get_d();
    if (J.has_tail) {
        // add tail contributions until the analytic remainder bound is negligible
        const long len = static_cast<long>(s.window.size());
        for (long d = J.range() + 1;; ++d) {
            h += J.tail_at(d) * disagreements_at_distance(s, d);
            double rem = J.tail_c * (std::pow(d, 2.0 - J.tail_alpha) / (J.tail_alpha - 2.0) +
                                     2.0 * len * std::pow(d, 1.0 - J.tail_alpha) / (J.tail_alpha - 1.0));
            if (rem < 1e-9 * (1.0 + std::fabs(h))) break;
            if (d > J.range() + 8000000) throw domain_error("long-range tail fails its decay bound");
        }
    }
    return scalar::approx(h);
}

// H_J^{(n)}(sigma) = Sum_i (J(i+n) - J(i)) 1{sigma_i != sigma_{i+1}},
// so that H_J(tau^{-n} sigma) = H_J(sigma) + H_J^{(n)}(sigma)
inline rat shifted_hamiltonian_correction(const spin_config& s, const nn_kernel& J, long n) {
    rat h(0);
    for (long i = s.start - 1; i < s.window_end(); ++i)
        if (s.spin(i) != s.spin(i + 1)) h += J.at(i + n) - J.at(i);
    return h;
}

struct weight_parts {
    rat h;        // interaction exponent of u
    long f0half;  // Q-degree
    long n;       // z-exponent
};

inline weight_parts weight_exponents(const spin_config& s, const interaction_kernel& k) {
    rat h = is_nn(k) ? hamiltonian_nn(s, std::get<nn_kernel>(k))
                     : hamiltonian_lr(s, std::get<lr_kernel>(k));
    return {h, f0_half(s), conserved_N(s)};
}

// unnormalized mu-weight u^{H_J(sigma)} q^{f_c(sigma)} = u^H Q^{f_0/2} z^N
inline scalar weight(const spin_config& s, const model_params& p) {
    weight_parts w = weight_exponents(s, p.kernel);
    scalar uh = p.mode == num_mode::exact
                    ? p.u.pow(rat_to_long(w.h))
                    : scalar::approx(std::pow(p.u.value(), w.h.get_d()));
    return uh * p.q.pow(2 * w.f0half) * p.z_pow(w.n);
}

namespace detail {
inline std::vector<long> suffix_sums(const particle_config& w) {
    const long rmax = w.max_site();
    std::vector<long> suffix(static_cast<size_t>(rmax) + 2, 0);
    for (long r = rmax; r >= 1; --r)
        suffix[static_cast<size_t>(r)] = suffix[static_cast<size_t>(r) + 1] + w.at(r);
    return suffix;
}
}  // namespace detail

/* Unnormalized stood-up weight: for nearest-neighbour kernels the numerator
 * of pi_J^{(n)}, u^{J(S_1-1) + Sum_j (J(S_j) + J(S_{j+1}-1)) 1{omega_{-j}>0}} q^{2 Sum i omega_{-i}}
 * with S_j = S_j^{(n)}(omega); long-range kernels transport mu through the
 * standing-up map instead. */
inline scalar particle_weight(const particle_config& w, const model_params& p);

// all sigma in B_n with f_0(sigma)/2 <= cap, via occupation vectors of the sector
namespace detail {
inline void partitions_rec(long remaining, long max_part, std::vector<long>& cur,
                           std::vector<std::vector<long>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}
inline std::vector<std::vector<long>> partitions_of_size(long n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    partitions_rec(n, n == 0 ? 1 : n, cur, out);
    return out;
}

// spin configuration of sector n with gap r holding omega_{-r} minus spins
inline spin_config sector_config(const particle_config& w, long n) {
    if (w.occ.empty()) return step_profile(n);
    const long rmax = w.max_site();
    const long s1 = n + 1 - suffix_sums(w)[1];
    std::vector<signed char> win;
    for (long r = 1; r <= rmax + 1; ++r) {
        win.push_back(+1);
        long gap = (r <= rmax) ? w.at(r) : 0;
        for (long g = 0; g < gap; ++g) win.push_back(-1);
    }
    return canonicalize(s1, std::move(win));
}
}  // namespace detail

inline std::vector<spin_config> enumerate_spin_sector(long n, long cap) {
    std::vector<spin_config> out;
    const long ground = n * (n + 1) / 2;
    for (long k = 0; k + ground <= cap; ++k) {
        for (const auto& parts : detail::partitions_of_size(k))
            out.push_back(detail::sector_config(particle_config::from_partition(parts), n));
    }
    return out;
}

inline std::vector<particle_config> enumerate_particles(long cap) {
    std::vector<particle_config> out;
    for (long k = 0; k <= cap; ++k)
        for (const auto& parts : detail::partitions_of_size(k))
            out.push_back(particle_config::from_partition(parts));
    return out;
}

inline scalar particle_weight(const particle_config& w, const model_params& p) {
    if (!is_nn(p.kernel)) {
        spin_config s = detail::sector_config(w, p.n);
        scalar uh = hamiltonian(s, p.kernel, p.mode);
        scalar uexp = p.mode == num_mode::exact
                          ? p.u.pow(rat_to_long(uh.ratio()))
                          : scalar::approx(std::pow(p.u.value(), uh.value()));
        return uexp * p.q.pow(2 * w.rank());
    }
    const nn_kernel& J = as_nn(p.kernel);
    const auto suffix = detail::suffix_sums(w);
    auto S = [&](long j) {
        long t = j < static_cast<long>(suffix.size()) ? suffix[static_cast<size_t>(j)] : 0;
        return p.n + j - t;
    };
    rat h = J.at(S(1) - 1);
    for (long j = 1; j <= w.max_site(); ++j)
        if (w.at(j) > 0) h += J.at(S(j)) + J.at(S(j + 1) - 1);
    scalar uh = p.mode == num_mode::exact ? p.u.pow(rat_to_long(h))
                                          : scalar::approx(std::pow(p.u.value(), h.get_d()));
    return uh * p.q.pow(2 * w.rank());
}

}  // namespace isingq
