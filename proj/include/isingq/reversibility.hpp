#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "transitions.hpp"

namespace isingq {

template <class State>
using generator_fn = std::function<std::vector<transition<State>>(const State&)>;

template <class State>
using weight_fn = std::function<scalar(const State&)>;

template <class State>
struct balance_failure {
    State from, to;
    std::string move;
    scalar lhs, rhs;  // weight(x) w(x,y) vs weight(y) w(y,x)
};

template <class State>
struct balance_report {
    long pairs_checked = 0;
    num_mode mode = num_mode::exact;
    std::vector<balance_failure<State>> failures;
    bool ok() const { return failures.empty(); }
};

namespace rev_detail {
template <class State>
std::map<State, size_t> index_of(const std::vector<State>& states) {
    std::map<State, size_t> idx;
    for (size_t i = 0; i < states.size(); ++i) idx.emplace(states[i], i);
    if (idx.size() != states.size()) throw domain_error("duplicate states in the truncated set");
    return idx;
}

// rates accumulated per ordered pair; throws on transitions escaping the set
template <class State>
std::vector<std::map<size_t, scalar>> rate_table(const std::vector<State>& states,
                                                 const generator_fn<State>& gen) {
    auto idx = index_of(states);
    std::vector<std::map<size_t, scalar>> rates(states.size());
    for (size_t i = 0; i < states.size(); ++i) {
        for (const auto& t : gen(states[i])) {
            auto it = idx.find(t.to);
            if (it == idx.end())
                throw domain_error("truncation closure violated: transition " + t.move.str() +
                                   " leaves the state set");
            auto [pos, fresh] = rates[i].emplace(it->second, t.rate);
            if (!fresh) pos->second = pos->second + t.rate;
        }
    }
    return rates;
}
}  // namespace rev_detail

/* Verifies weight(x) w(x,y) = weight(y) w(y,x) for every listed pair;
 * exact equality in rational mode, tolerance comparison in float mode. */
template <class State>
balance_report<State> check_detailed_balance(const std::vector<State>& states,
                                             const generator_fn<State>& gen,
                                             const weight_fn<State>& wf,
                                             double tol = 0.0) {
    balance_report<State> rep;
    auto rates = rev_detail::rate_table(states, gen);
    std::vector<scalar> wt;
    wt.reserve(states.size());
    for (const auto& s : states) wt.push_back(wf(s));
    if (!wt.empty()) rep.mode = wt[0].mode();
    for (size_t i = 0; i < states.size(); ++i) {
        for (const auto& [j, rij] : rates[i]) {
            if (j <= i) continue;  // each unordered pair once
            scalar rji = rates[j].count(i) ? rates[j].at(i)
                                           : (rep.mode == num_mode::exact ? scalar::exact(0)
                                                                          : scalar::approx(0.0));
            scalar lhs = wt[i] * rij;
            scalar rhs = wt[j] * rji;
            ++rep.pairs_checked;
            bool equal = rep.mode == num_mode::exact ? (lhs == rhs) : lhs.approx_eq(rhs, tol);
            if (!equal)
                rep.failures.push_back({states[i], states[j], "pair(" + std::to_string(i) + "," +
                                                                  std::to_string(j) + ")",
                                        lhs, rhs});
        }
        // reverse-only transitions are caught from the other endpoint's loop
        for (const auto& [j, rji] : rates[i]) {
            (void)rji;
            if (j > i) continue;
            if (!rates[j].count(i)) {
                ++rep.pairs_checked;
                scalar zero = rep.mode == num_mode::exact ? scalar::exact(0) : scalar::approx(0.0);
                rep.failures.push_back(
                    {states[j], states[i], "one-sided pair", zero, wt[i] * rates[i].at(j)});
            }
        }
    }
    return rep;
}

// residual of pi G: exact zero for a reversible pair (pi the normalized weights)
template <class State>
scalar stationarity_check(const std::vector<State>& states, const generator_fn<State>& gen,
                          const weight_fn<State>& wf) {
    auto rates = rev_detail::rate_table(states, gen);
    std::vector<scalar> pi;
    pi.reserve(states.size());
    for (const auto& s : states) pi.push_back(wf(s));
    scalar z = pi[0];
    for (size_t i = 1; i < pi.size(); ++i) z = z + pi[i];
    for (auto& x : pi) x = x / z;
    const bool exact = pi[0].is_exact();
    scalar worst = exact ? scalar::exact(0) : scalar::approx(0.0);
    for (size_t y = 0; y < states.size(); ++y) {
        scalar acc = exact ? scalar::exact(0) : scalar::approx(0.0);
        for (size_t x = 0; x < states.size(); ++x) {
            if (x == y) continue;
            if (rates[x].count(y)) acc = acc + pi[x] * rates[x].at(y);
        }
        for (const auto& [to, r] : rates[y]) {
            (void)to;
            acc = acc - pi[y] * r;
        }
        scalar mag = acc;
        if (exact ? (mag < scalar::exact(0)) : (mag.value() < 0))
            mag = (exact ? scalar::exact(0) : scalar::approx(0.0)) - mag;
        if (worst < mag) worst = mag;
    }
    return worst;
}

struct trajectory_stats {
    std::uint64_t seed = 0;
    long events = 0;
    double total_time = 0;
    std::vector<double> occupation;  // time spent per state
    std::vector<double> empirical;   // occupation / total_time
    double tv_distance = 0;          // to the exact conditional measure
};

/* Event-driven (Gillespie) simulation of the truncated jump chain.
 * Deterministic for a fixed seed; float mode only. */
template <class State>
trajectory_stats simulate(const std::vector<State>& states, const generator_fn<State>& gen,
                          const std::vector<scalar>& exact_measure, size_t initial,
                          std::uint64_t seed, long events,
                          std::ostream* trace = nullptr) {
    auto rates = rev_detail::rate_table(states, gen);
    std::vector<std::vector<std::pair<size_t, double>>> out(states.size());
    std::vector<double> total(states.size(), 0.0);
    for (size_t i = 0; i < states.size(); ++i)
        for (const auto& [j, r] : rates[i]) {
            out[i].emplace_back(j, r.value());
            total[i] += r.value();
        }
    trajectory_stats st;
    st.seed = seed;
    st.events = events;
    st.occupation.assign(states.size(), 0.0);
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    size_t cur = initial;
    for (long e = 0; e < events; ++e) {
        if (total[cur] <= 0.0) throw domain_error("absorbing state reached during simulation");
        double dt = -std::log(uniform()) / total[cur];
        st.occupation[cur] += dt;
        st.total_time += dt;
        if (trace) *trace << st.total_time << "," << cur << "\n";
        double x = uniform() * total[cur];
        size_t next = out[cur].back().first;
        for (const auto& [j, r] : out[cur]) {
            if (x < r) {
                next = j;
                break;
            }
            x -= r;
        }
        cur = next;
    }
    st.empirical.assign(states.size(), 0.0);
    if (st.total_time > 0) {
        for (size_t i = 0; i < states.size(); ++i) st.empirical[i] = st.occupation[i] / st.total_time;
    } else {
        st.empirical[initial] = 1.0;  // zero-length run: all mass on the initial state
    }
    double tv = 0;
    for (size_t i = 0; i < states.size(); ++i)
        tv += std::fabs(st.empirical[i] - exact_measure[i].value());
    st.tv_distance = tv / 2.0;
    return st;
}

}  // namespace isingq
