#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "rational.hpp"

namespace isingq {

/* Blocking spin configuration: sigma_i = -1 for i < start, +1 for
 * i >= start + window.size(), explicit spins in between. Canonical form:
 * the window is empty (pure step profile) or begins with +1 and ends
 * with -1, so equal configurations have equal encodings. */
struct spin_config {
    long start = 1;
    std::vector<signed char> window;

    int spin(long i) const {
        if (i < start) return -1;
        const long off = i - start;
        if (off >= static_cast<long>(window.size())) return +1;
        return window[static_cast<size_t>(off)];
    }

    long window_end() const { return start + static_cast<long>(window.size()); }  // first forced +1

    bool operator==(const spin_config& o) const = default;
    auto operator<=>(const spin_config& o) const = default;

    std::string str() const {
        std::string s;
        for (signed char v : window) s += (v > 0 ? '+' : '-');
        return "@" + std::to_string(start) + ":" + s;
    }
};

// sigma^n: -1 up to n, +1 from n+1 on
inline spin_config step_profile(long n) { return spin_config{n + 1, {}}; }

inline spin_config canonicalize(long start, std::vector<signed char> w) {
    size_t lo = 0;
    while (lo < w.size() && w[lo] < 0) ++lo;
    if (lo == w.size()) return spin_config{start + static_cast<long>(w.size()), {}};
    size_t hi = w.size();
    while (hi > lo && w[hi - 1] > 0) --hi;
    if (hi == lo) return spin_config{start + static_cast<long>(lo), {}};
    return spin_config{start + static_cast<long>(lo),
                       std::vector<signed char>(w.begin() + lo, w.begin() + hi)};
}

inline spin_config canonicalize(const spin_config& s) { return canonicalize(s.start, s.window); }

// swap the (differing) spins at i and i+1
inline spin_config nn_swap(const spin_config& s, long i) {
    long a = std::min(s.start, i);
    long b = std::max(s.window_end() - 1, i + 1);
    std::vector<signed char> w;
    w.reserve(static_cast<size_t>(b - a + 1));
    for (long p = a; p <= b; ++p) w.push_back(static_cast<signed char>(s.spin(p)));
    std::swap(w[static_cast<size_t>(i - a)], w[static_cast<size_t>(i + 1 - a)]);
    return canonicalize(a, std::move(w));
}

// swap arbitrary differing spins at k and l
inline spin_config swap_spins(const spin_config& s, long k, long l) {
    long a = std::min({s.start, k, l});
    long b = std::max({s.window_end() - 1, k, l});
    std::vector<signed char> w;
    w.reserve(static_cast<size_t>(b - a + 1));
    for (long p = a; p <= b; ++p) w.push_back(static_cast<signed char>(s.spin(p)));
    std::swap(w[static_cast<size_t>(k - a)], w[static_cast<size_t>(l - a)]);
    return canonicalize(a, std::move(w));
}

/* Finitely supported occupation vector on sites -1, -2, ...; occ maps the
 * site index r >= 1 to omega_{-r} >= 1 (absent means empty). Equivalently
 * an integer partition with occ[r] parts of size r. */
struct particle_config {
    std::map<long, long> occ;

    long at(long r) const {
        auto it = occ.find(r);
        return it == occ.end() ? 0 : it->second;
    }
    void set(long r, long v) {
        if (r < 1) throw domain_error("particle site index must be >= 1");
        if (v < 0) throw domain_error("negative occupation");
        if (v == 0)
            occ.erase(r);
        else
            occ[r] = v;
    }
    void add(long r, long dv) { set(r, at(r) + dv); }

    long max_site() const { return occ.empty() ? 0 : occ.rbegin()->first; }
    long total() const {
        long t = 0;
        for (const auto& [r, v] : occ) {
            (void)r;
            t += v;
        }
        return t;
    }
    // Sum_i i * omega_{-i}: the size of the partition, the truncation rank
    long rank() const {
        long t = 0;
        for (const auto& [r, v] : occ) t += r * v;
        return t;
    }

    static particle_config from_partition(const std::vector<long>& parts) {
        particle_config w;
        for (long p : parts) w.add(p, 1);
        return w;
    }
    std::vector<long> to_partition() const {
        std::vector<long> parts;
        for (auto it = occ.rbegin(); it != occ.rend(); ++it)
            for (long k = 0; k < it->second; ++k) parts.push_back(it->first);
        return parts;
    }

    bool operator==(const particle_config& o) const = default;
    auto operator<=>(const particle_config& o) const = default;

    std::string str() const {
        std::string s = "{";
        for (const auto& [r, v] : occ) {
            if (s.size() > 1) s += ",";
            s += std::to_string(-r) + ":" + std::to_string(v);
        }
        return s + "}";
    }
};

}  // namespace isingq
