#pragma once

#include <vector>

#include "observables.hpp"
#include "standup.hpp"
#include "transitions.hpp"

namespace isingq {

/* Kawasaki rates for the nearest-neighbour chain. A swap of the differing
 * spins at (i, i+1) changes the energy by dH (only the edges (i-1,i) and
 * (i+1,i+2) move), and
 *   rate = q^{-1} u^{dH}/(1+u^{dH})   if the positive spin moves right,
 *   rate = q^{+1} u^{dH}/(1+u^{dH})   if it moves left,
 * which is the six-case table with the tanh factors rewritten in u-powers. */
inline std::vector<transition<spin_config>> ising_transitions(const spin_config& s,
                                                              const model_params& p, long cap) {
    const nn_kernel& J = as_nn(p.kernel);
    std::vector<transition<spin_config>> out;
    for (long i = s.start - 1; i < s.window_end(); ++i) {
        if (s.spin(i) == s.spin(i + 1)) continue;
        const bool plus_moves_right = s.spin(i) > 0;
        spin_config t = nn_swap(s, i);
        if (f0_half(t) > cap) continue;
        rat dh(0);
        dh += J.at(i - 1) * (t.spin(i - 1) != t.spin(i) ? 1 : 0);
        dh -= J.at(i - 1) * (s.spin(i - 1) != s.spin(i) ? 1 : 0);
        dh += J.at(i + 1) * (t.spin(i + 1) != t.spin(i + 2) ? 1 : 0);
        dh -= J.at(i + 1) * (s.spin(i + 1) != s.spin(i + 2) ? 1 : 0);
        scalar rate = p.half_one_minus_tanh(dh) * p.q_pow(plus_moves_right ? -1 : +1);
        out.push_back({std::move(t), rate,
                       move_info{move_info::kind::spin_swap, i, i + 1, 0, 1}});
    }
    return out;
}

/* Stood-up process: single-particle hops across (-r, -r+1) plus the open
 * boundary at -1. Each rate is the six-case swap rate of the positive spin
 * the hop moves, expressed through the spin locators S_r^{(n)}(omega). */
inline std::vector<transition<particle_config>> standup_transitions(const particle_config& w,
                                                                    const model_params& p, long n,
                                                                    long cap) {
    const nn_kernel& J = as_nn(p.kernel);
    std::vector<transition<particle_config>> out;
    const standup_view sv(w, n);
    const long rank = w.rank();

    // right jumps over (-r, -r+1), r >= 2; rank drops by 1
    for (const auto& [r, count] : w.occ) {
        if (r < 2) continue;
        const long Sr = sv.S(r);
        const long neigh = w.at(r - 1);
        rat arg;
        if (count == 1)
            arg = neigh == 0 ? rat(J.at(Sr - 1) - J.at(Sr + 1))
                             : rat(-(J.at(Sr - 1) + J.at(Sr + 1)));
        else
            arg = neigh == 0 ? rat(J.at(Sr - 1) + J.at(Sr + 1))
                             : rat(J.at(Sr + 1) - J.at(Sr - 1));
        // arg is the energy change dH of the corresponding right swap at S_r
        scalar rate = p.half_one_minus_tanh(arg) * p.q_pow(-1);
        particle_config t = w;
        t.add(r, -1);
        t.add(r - 1, +1);
        out.push_back({std::move(t), rate, move_info{move_info::kind::hop_right, r, r - 1, 1, 1}});
    }
    // left jumps over (-r, -r+1), r >= 2, moving a particle from -r+1 to -r;
    // they raise the rank by one and are cut when the cap is tight
    for (const auto& [src, count] : w.occ) {
        const long r = src + 1;
        if (rank + 1 > cap) break;
        const long Sr = sv.S(r);
        const long dest = w.at(r);
        rat arg;
        if (count == 1)
            arg = dest == 0 ? rat(J.at(Sr) - J.at(Sr - 2)) : rat(-(J.at(Sr - 2) + J.at(Sr)));
        else
            arg = dest == 0 ? rat(J.at(Sr - 2) + J.at(Sr)) : rat(J.at(Sr - 2) - J.at(Sr));
        scalar rate = p.half_one_minus_tanh(arg) * p.q_pow(+1);
        particle_config t = w;
        t.add(src, -1);
        t.add(r, +1);
        out.push_back({std::move(t), rate, move_info{move_info::kind::hop_left, src, r, 1, 1}});
    }
    // boundary moves at -1
    const long S1 = sv.S(1);
    if (w.at(1) >= 1) {
        rat arg = (w.at(1) == 1) ? rat(-(J.at(S1 - 1) + J.at(S1 + 1))) : rat(J.at(S1 + 1) - J.at(S1 - 1));
        scalar rate = p.half_one_minus_tanh(arg) * p.q_pow(-1);
        particle_config t = w;
        t.add(1, -1);
        out.push_back({std::move(t), rate, move_info{move_info::kind::boundary_out, 1, 0, 1, 1}});
    }
    if (rank + 1 <= cap) {
        rat arg = (w.at(1) == 0) ? rat(J.at(S1 - 2) + J.at(S1)) : rat(J.at(S1 - 2) - J.at(S1));
        scalar rate = p.half_one_minus_tanh(arg) * p.q_pow(+1);
        particle_config t = w;
        t.add(1, +1);
        out.push_back({std::move(t), rate, move_info{move_info::kind::boundary_in, 0, 1, 1, 1}});
    }
    return out;
}

// nu^n (resp. pi^{(n)}) restricted to the truncated set: weights / sum
template <class State, class WeightFn>
std::vector<scalar> conditional_measure_of(const std::vector<State>& states, WeightFn&& wf) {
    if (states.empty()) throw domain_error("conditional_measure of an empty set");
    std::vector<scalar> w;
    w.reserve(states.size());
    for (const auto& s : states) w.push_back(wf(s));
    scalar z = w[0];
    for (size_t i = 1; i < w.size(); ++i) z = z + w[i];
    for (auto& x : w) x = x / z;
    return w;
}

inline std::vector<scalar> conditional_measure(const std::vector<spin_config>& states,
                                               const model_params& p) {
    return conditional_measure_of(states, [&](const spin_config& s) { return weight(s, p); });
}
inline std::vector<scalar> conditional_measure(const std::vector<particle_config>& states,
                                               const model_params& p) {
    return conditional_measure_of(states,
                                  [&](const particle_config& w) { return particle_weight(w, p); });
}

}  // namespace isingq
