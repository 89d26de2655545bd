#pragma once

#include <vector>

#include "dynamics_nn.hpp"
#include "observables.hpp"
#include "standup.hpp"
#include "transitions.hpp"

namespace isingq {

namespace lr_detail {
// dH of swapping the + spin at k with the - spin at l, from the spin picture
inline rat delta_h_spin(const spin_config& s, long k, long l, const lr_kernel& J) {
    rat dh(0);
    const long R = J.range();
    auto contrib = [&](long a) {
        if (a == k || a == l) return;
        dh += (J.at(a, k) - J.at(a, l)) * s.spin(a);
    };
    for (long a = k - R; a <= k + R; ++a) contrib(a);
    for (long a = l - R; a <= l + R; ++a)
        if (a < k - R || a > k + R) contrib(a);
    return dh;
}

/* The same quantity from the particle picture: 2 Sum_{r != r0} (J(S_r,k) - J(S_r,l))
 * - (T(k) - T(l)) with T the kernel row sums and S_r the positive-spin sites
 * of omega; this is the displayed w^{(n)} tanh argument with the interaction
 * sums taken over i != k,l. */
inline rat delta_h_particle(const standup_view& sv, long r0, long k, long l, const lr_kernel& J) {
    rat acc(0);
    const long R = J.range();
    const long amax = std::max(k, l) + R;
    for (long r = 1;; ++r) {
        long Sr = sv.S(r);
        if (Sr > amax) break;
        if (r == r0) continue;
        acc += J.at(Sr, k) - J.at(Sr, l);
    }
    return 2 * acc - (J.row_sum(k) - J.row_sum(l));
}

inline scalar lr_rate_from_dh(const model_params& p, const rat& dh, long k, long l) {
    return p.half_one_minus_tanh(dh) * p.q_pow(k - l);
}
}  // namespace lr_detail

/* w(sigma,sigma') = 1/2 q^{k-l} (1 - tanh(beta/2 Sum_{i != l,k} (J(i,k) sigma_k sigma_i
 * + J(i,l) sigma_l sigma_i))) for sigma_k = +1, sigma_l = -1. */
inline scalar lr_ising_rate(const spin_config& s, long k, long l, const model_params& p) {
    if (s.spin(k) <= 0 || s.spin(l) >= 0)
        throw domain_error("lr_ising_rate expects sigma_k = +1, sigma_l = -1");
    const lr_kernel& J = as_lr(p.kernel);
    if (p.mode == num_mode::exact && J.has_tail)
        throw domain_error("exact mode requires a finite-support long-range kernel");
    return lr_detail::lr_rate_from_dh(p, lr_detail::delta_h_spin(s, k, l, J), k, l);
}

/* Every exchange of a + spin at k with a - spin at l whose image stays in
 * the truncated sector: f_0/2 moves by k - l, bounded between the sector
 * ground state and the cap. */
inline std::vector<transition<spin_config>> lr_ising_transitions(const spin_config& s,
                                                                 const model_params& p, long cap) {
    const long rank = f0_half(s);
    const long n = conserved_N(s);
    const long ground = n * (n + 1) / 2;
    const long max_minus = s.window.empty() ? s.start - 1 : s.window_end() - 1;
    std::vector<transition<spin_config>> out;
    for (long k = s.start; k <= max_minus + (cap - rank); ++k) {
        if (s.spin(k) <= 0) continue;
        const long lo = k - (cap - rank);
        const long hi = std::min(max_minus, k + (rank - ground));
        for (long l = lo; l <= hi; ++l) {
            if (s.spin(l) >= 0) continue;
            scalar rate = lr_ising_rate(s, k, l, p);
            out.push_back({swap_spins(s, k, l), rate,
                           move_info{move_info::kind::spin_swap, k, l, 0, std::labs(k - l)}});
        }
    }
    return out;
}

/* Transferred particle dynamics: bulk hops with stack shifts and merges,
 * boundary exits and entries, enumerated by hop descriptor (origin -i,
 * particle index m, target -j). Rates are computed on the particle side
 * from suffix sums; the conjugation tests compare them with lr_ising_rate. */
inline std::vector<transition<particle_config>> lr_particle_transitions(const particle_config& w,
                                                                        const model_params& p,
                                                                        long n, long cap) {
    const lr_kernel& J = as_lr(p.kernel);
    std::vector<transition<particle_config>> out;
    const standup_view sv(w, n);
    const long rank = w.rank();
    const long budget = cap - rank;

    auto hop_right_target = [&](long i, long m, long j) {
        particle_config t = w;
        if (j + 1 == i) {
            t.add(i, -m);
            t.add(j, +m);
        } else {
            t.set(j, w.at(j) + w.at(j + 1) + 1);
            for (long sidx = j + 1; sidx <= i - 2; ++sidx) t.set(sidx, w.at(sidx + 1));
            t.set(i - 1, m - 1);
            t.set(i, w.at(i) - m);
        }
        return t;
    };
    auto hop_left_target = [&](long i, long m, long j) {
        particle_config t = w;
        if (j == i + 1) {
            t.set(i, m - 1);
            t.set(i + 1, w.at(i + 1) + (w.at(i) - m) + 1);
        } else {
            t.set(i, m - 1);
            t.set(i + 1, w.at(i) - m);
            for (long sidx = i + 2; sidx <= j - 1; ++sidx) t.set(sidx, w.at(sidx - 1));
            t.set(j, w.at(j - 1) + w.at(j) + 1);
        }
        return t;
    };

    for (const auto& [i, occ] : w.occ) {
        for (long m = 1; m <= occ; ++m) {
            const long lhat = sv.S(i) + m;  // the - spin being exchanged
            // bulk right hops: target -j, j < i; the (j+1)-th + spin moves right
            for (long j = 1; j < i; ++j) {
                const long khat = sv.S(j + 1);
                rat dh = lr_detail::delta_h_particle(sv, j + 1, khat, lhat, J);
                out.push_back({hop_right_target(i, m, j),
                               lr_detail::lr_rate_from_dh(p, dh, khat, lhat),
                               move_info{move_info::kind::hop_right, i, j, m, lhat - khat}});
            }
            // boundary exit: the first + spin moves right past the - spin
            {
                const long khat = sv.S(1);
                rat dh = lr_detail::delta_h_particle(sv, 1, khat, lhat, J);
                particle_config t = w;
                if (i == 1) {
                    t.add(1, -m);
                } else {
                    for (long sidx = 1; sidx <= i - 2; ++sidx) t.set(sidx, w.at(sidx + 1));
                    t.set(i - 1, m - 1);
                    t.set(i, w.at(i) - m);
                }
                out.push_back({std::move(t), lr_detail::lr_rate_from_dh(p, dh, khat, lhat),
                               move_info{move_info::kind::boundary_out, i, 0, m, lhat - khat}});
            }
            // bulk left hops: target -j, j > i; the j-th + spin moves left; rank grows by the distance
            for (long j = i + 1;; ++j) {
                const long khat = sv.S(j);
                const long d = khat - lhat;
                if (d > budget) break;
                rat dh = lr_detail::delta_h_particle(sv, j, khat, lhat, J);
                out.push_back({hop_left_target(i, m, j),
                               lr_detail::lr_rate_from_dh(p, dh, khat, lhat),
                               move_info{move_info::kind::hop_left, i, j, m, d}});
            }
        }
    }
    // boundary entries: the i-th + spin moves left of S_1, escorting m-1 particles to -1
    for (long i = 1;; ++i) {
        const long khat = sv.S(i);
        if (khat - (sv.S(1) - 1) > budget) break;
        for (long m = 1;; ++m) {
            const long lhat = sv.S(1) - m;
            const long d = khat - lhat;
            if (d > budget) break;
            rat dh = lr_detail::delta_h_particle(sv, i, khat, lhat, J);
            particle_config t = w;
            if (i == 1) {
                t.add(1, +m);
            } else {
                t.set(1, m - 1);
                for (long sidx = 2; sidx <= i - 1; ++sidx) t.set(sidx, w.at(sidx - 1));
                t.set(i, w.at(i - 1) + w.at(i) + 1);
            }
            out.push_back({std::move(t), lr_detail::lr_rate_from_dh(p, dh, khat, lhat),
                           move_info{move_info::kind::boundary_in, 0, i, m, d}});
        }
    }
    return out;
}

// the cut chain: a - spin only exchanges with the + spins bounding its run
inline bool is_restricted_move(const move_info& mv) {
    switch (mv.k) {
        case move_info::kind::hop_right: return mv.j == mv.i - 1;
        case move_info::kind::hop_left: return mv.j == mv.i + 1;
        case move_info::kind::boundary_out: return mv.i == 1;
        case move_info::kind::boundary_in: return mv.j == 1;
        case move_info::kind::spin_swap: return false;
    }
    return false;
}

inline std::vector<transition<particle_config>> restricted_transitions(const particle_config& w,
                                                                       const model_params& p,
                                                                       long n, long cap) {
    std::vector<transition<particle_config>> all = lr_particle_transitions(w, p, n, cap);
    std::vector<transition<particle_config>> out;
    for (auto& t : all)
        if (is_restricted_move(t.move)) out.push_back(std::move(t));
    return out;
}

// spin-side restricted dynamics: a - spin only swaps with the ends of its own run
inline std::vector<transition<spin_config>> restricted_ising_transitions(const spin_config& s,
                                                                         const model_params& p,
                                                                         long cap) {
    std::vector<transition<spin_config>> out;
    for (auto& t : lr_ising_transitions(s, p, cap)) {
        const long k = t.move.i, l = t.move.j;
        bool adjacent_run = false;
        if (l > k) {  // + moves right through the run starting at k+1
            adjacent_run = true;
            for (long x = k + 1; x <= l; ++x)
                if (s.spin(x) >= 0) adjacent_run = false;
        } else {  // + moves left through the run ending at k-1
            adjacent_run = true;
            for (long x = l; x <= k - 1; ++x)
                if (s.spin(x) >= 0) adjacent_run = false;
        }
        if (adjacent_run) out.push_back(std::move(t));
    }
    return out;
}

/* Natural reversible particle dynamics: k-particle block
 * moves. A block leaving site -i moves the i-th (rightward) or (i+1)-th
 * (leftward) positive spin of the stood-up chain, so the rate denominators
 * are the r-factors of the two gaps the move changes:
 *   right (-i -> -i+1): q^{-k} / (r_{i-1} r_i)   with r_0 = 1,
 *   left  (-i -> -i-1): q^{ k} / (r_i r_{i+1}),
 *   exit of k from -1:  q^{-k} / r_1,
 *   entry of k to -1:   q^{ k} / r_1. */
inline std::vector<transition<particle_config>> natural_transitions(const particle_config& w,
                                                                    const model_params& p,
                                                                    long cap) {
    std::vector<transition<particle_config>> out;
    const long rank = w.rank();
    auto rfac = [&](long i) { return std::max(w.at(i), 1L); };
    auto block_rate = [&](long e, long denom) {
        return p.mode == num_mode::exact
                   ? p.q_pow(e) / scalar::exact(denom)
                   : scalar::approx(std::pow(p.q.value(), static_cast<double>(e)) /
                                    static_cast<double>(denom));
    };
    for (const auto& [i, occ] : w.occ) {
        for (long k = 1; k <= occ; ++k) {
            if (i >= 2) {  // right block hop
                particle_config t = w;
                t.add(i, -k);
                t.add(i - 1, +k);
                out.push_back({std::move(t), block_rate(-k, rfac(i - 1) * rfac(i)),
                               move_info{move_info::kind::hop_right, i, i - 1, k, k}});
            } else {  // exit through the boundary
                particle_config t = w;
                t.add(1, -k);
                out.push_back({std::move(t), block_rate(-k, rfac(1)),
                               move_info{move_info::kind::boundary_out, 1, 0, k, k}});
            }
            if (rank + k <= cap) {  // left block hop
                particle_config t = w;
                t.add(i, -k);
                t.add(i + 1, +k);
                out.push_back({std::move(t), block_rate(k, rfac(i) * rfac(i + 1)),
                               move_info{move_info::kind::hop_left, i, i + 1, k, k}});
            }
        }
    }
    for (long k = 1; rank + k <= cap; ++k) {  // entry to -1
        particle_config t = w;
        t.add(1, +k);
        out.push_back({std::move(t), block_rate(k, rfac(1)),
                       move_info{move_info::kind::boundary_in, 0, 1, k, k}});
    }
    return out;
}

// lambda^{(n)}(sigma) up to normalization: q^{f_c} Prod_{i>=0} r_i(sigma), r_0 = 1
inline scalar lambda_weight(const spin_config& s, const model_params& p) {
    long rprod = 1;
    particle_config w = stand_up(s, conserved_N(s));
    for (const auto& [i, occ] : w.occ) {
        (void)i;
        rprod *= occ;  // r_i = occ v 1; empty gaps contribute 1
    }
    return p.q.pow(2 * f0_half(s)) * p.z_pow(conserved_N(s)) *
           (p.mode == num_mode::exact ? scalar::exact(rprod)
                                      : scalar::approx(static_cast<double>(rprod)));
}

/* g_c^{(r)}(omega): the per-gap decomposition of f_c((T^n)^{-1}(omega)).
 * The r = 0 conventions (S_0 = -infinity) make the clamp 1 and drop the
 * second term. */
inline rat g_c_term(const particle_config& w, long n, long r, const rat& c) {
    const auto suffix = detail::suffix_sums(w);
    auto suf = [&](long j) {
        return j < static_cast<long>(suffix.size()) ? suffix[static_cast<size_t>(j)] : 0;
    };
    const long A = suf(r + 1);                            // Sum_{j >= r+1} omega_{-j}
    const long b_site = n + r - A;                        // S_{r+1} - 1
    const long M = r == 0 ? 1 : std::max(1L, n + r + 1 - suf(r));  // 1 v (S_r + 1)
    rat g(0);
    if (A <= n + r - 1) g += rat(b_site + 1 - M) * (rat(b_site + M) - 2 * c);
    if (r >= 1 && suf(r) >= n + r) g -= 2 * (rat(n + r - suf(r)) - c);
    return g;
}

inline rat g_c_sum(const particle_config& w, long n, const rat& c) {
    rat total(0);
    const long rmax = w.max_site() + w.total() + std::labs(n) + 2;
    for (long r = 0; r <= rmax; ++r) total += g_c_term(w, n, r, c);
    return total;
}

/* kappa^{(n)}(omega) = lambda^{(n)}((T^n)^{-1}(omega)), evaluated both through
 * lay_down followed by f_c and through the g_c sum; a disagreement raises an
 * inconsistency error. */
inline scalar kappa_weight(const particle_config& w, const model_params& p) {
    spin_config s = lay_down(w, p.n);
    rat c = p.mode == num_mode::exact ? p.c.ratio() : rat(0);
    rat fc_lay = p.mode == num_mode::exact ? field_fc(s, c)
                                           : field_fc(s, rat(0));  // float path compares at c = 0
    rat fc_g = g_c_sum(w, p.n, c);
    if (p.mode == num_mode::floating) fc_g = g_c_sum(w, p.n, rat(0));
    if (fc_lay != fc_g)
        throw domain_error("kappa dual evaluation mismatch on " + w.str() + ": lay_down gives " +
                           fc_lay.get_str() + ", g_c sum gives " + fc_g.get_str());
    long rprod = 1;
    for (const auto& [i, occ] : w.occ) {
        (void)i;
        rprod *= occ;
    }
    if (p.mode == num_mode::exact)
        return p.q.pow(2 * f0_half(s)) * p.z_pow(conserved_N(s)) * scalar::exact(rprod);
    double fc_val = fc_lay.get_d() - 2.0 * p.c.value() * conserved_N(s);
    return scalar::approx(std::pow(p.q.value(), fc_val) * rprod);
}

// ---- summability-condition evaluation (numeric, never a proof) -------------

struct concentration_report_t {
    std::string condition;          // "lemma2.1" (nearest-neighbour) or "lemma6.1" (long-range)
    std::vector<double> terms_neg;  // i = 0, -1, ..., -(M-1)
    std::vector<double> terms_pos;  // i = 1, ..., M
    double partial_sum = 0;
    double decay_ratio = 0;  // largest late-term ratio observed
    std::string verdict;     // summable-evidence | diverging-evidence | inconclusive
};

inline concentration_report_t concentration_report(const model_params& p, long horizon) {
    if (horizon < 1) throw domain_error("concentration horizon must be >= 1");
    concentration_report_t rep;
    const double u = p.u.value(), q = p.q.value(), c = p.c.value();
    auto upow = [&](double x) { return std::pow(u, x); };
    if (is_nn(p.kernel)) {
        rep.condition = "lemma2.1";
        const nn_kernel& J = as_nn(p.kernel);
        auto Jd = [&](long i) { return J.at(i).get_d(); };
        for (long t = 0; t < horizon; ++t) {
            long i = -t;
            double num = std::pow(q, 2.0 * (i - c)) * upow(-Jd(i - 1));
            double den = upow(-std::fabs(Jd(i))) + q * q * upow(-std::fabs(Jd(i - 2)));
            rep.terms_neg.push_back(1.0 / (1.0 + num / den));
        }
        for (long i = 1; i <= horizon; ++i) {
            double num = std::pow(q, -2.0 * (i - c)) * upow(-Jd(i - 1));
            double den = upow(-std::fabs(Jd(i))) + std::pow(q, -2.0) * upow(-std::fabs(Jd(i - 2)));
            rep.terms_pos.push_back(1.0 / (1.0 + num / den));
        }
    } else {
        rep.condition = "lemma6.1";
        const lr_kernel& J = as_lr(p.kernel);
        auto Jd = [&](long i, long j) {
            double v = J.at(i, j).get_d();
            return v != 0.0 ? v : J.tail_at(std::labs(i - j));
        };
        const long reach = J.range() + (J.has_tail ? 64 : 0);
        auto straddle = [&](long i) {  // Sum_{j < i < k} J(j,k)
            double s = 0;
            for (long j = i - 1; j >= i - reach; --j)
                for (long k = i + 1; k - j <= reach; ++k) s += Jd(j, k);
            return s;
        };
        auto row_above = [&](long i) {  // Sum_{j > i} J(i,j)
            double s = 0;
            for (long d = 1; d <= reach; ++d) s += Jd(i, i + d);
            return s;
        };
        auto row_below = [&](long i) {
            double s = 0;
            for (long d = 1; d <= reach; ++d) s += Jd(i, i - d);
            return s;
        };
        for (long t = 0; t < horizon; ++t) {
            long i = -t;
            double pre = upow(-straddle(i));
            double inner = upow(-Jd(i - 1, i)) * std::pow(q, 2.0 * (i - c)) /
                           (upow(-row_above(i)) + q * q * upow(-row_below(i - 1)));
            rep.terms_neg.push_back(pre / (1.0 + inner));
        }
        for (long i = 1; i <= horizon; ++i) {
            double pre = upow(-straddle(i));
            double inner = upow(-Jd(i - 1, i)) * std::pow(q, -2.0 * (i - c)) /
                           (upow(-row_above(i)) + std::pow(q, -2.0) * upow(-row_below(i - 1)));
            rep.terms_pos.push_back(pre / (1.0 + inner));
        }
    }
    double ratio = 0;
    bool tiny_tail = true;
    auto scan = [&](const std::vector<double>& v) {
        for (size_t t = v.size() > 8 ? v.size() - 8 : 1; t < v.size(); ++t)
            if (v[t - 1] > 1e-300) ratio = std::max(ratio, v[t] / v[t - 1]);
        if (!v.empty() && v.back() > 1e-9) tiny_tail = false;
        for (double x : v) rep.partial_sum += x;
    };
    scan(rep.terms_neg);
    scan(rep.terms_pos);
    rep.decay_ratio = ratio;
    if (ratio < 0.999 || (tiny_tail && ratio < 1.0))
        rep.verdict = "summable-evidence";
    else if (ratio >= 1.0 && !tiny_tail)
        rep.verdict = "diverging-evidence";
    else
        rep.verdict = "inconclusive";
    return rep;
}

}  // namespace isingq
