#pragma once

#include <vector>

#include "config.hpp"
#include "observables.hpp"

namespace isingq {

/* Standing-up map T^n: the number of particles at site -r is the number of
 * negative spins between the r-th and (r+1)-th positive spins of sigma. */
inline particle_config stand_up(const spin_config& s, long n) {
    if (conserved_N(s) != n)
        throw domain_error("stand_up: configuration lies in sector N=" +
                           std::to_string(conserved_N(s)) + ", not " + std::to_string(n));
    particle_config w;
    // positive spin positions: inside the window, then the solid +1 ray
    std::vector<long> plus;
    for (long i = s.start; i < s.window_end(); ++i)
        if (s.spin(i) > 0) plus.push_back(i);
    plus.push_back(s.window_end());  // first ray spin; gaps beyond are zero
    for (size_t r = 0; r + 1 < plus.size(); ++r) {
        long gap = plus[r + 1] - plus[r] - 1;
        if (gap > 0) w.set(static_cast<long>(r) + 1, gap);
    }
    return w;
}

// the site of the r-th positive spin, S_r^{(n)}(omega) = n + r - Sum_{i>=r} omega_{-i}
struct standup_view {
    long n;
    std::vector<long> suffix;  // suffix[r] = Sum_{i>=r} omega_{-i}

    standup_view(const particle_config& w, long sector)
        : n(sector), suffix(detail::suffix_sums(w)) {}

    long S(long r) const {
        if (r < 1) throw domain_error("spin index must be >= 1");
        long t = r < static_cast<long>(suffix.size()) ? suffix[static_cast<size_t>(r)] : 0;
        return n + r - t;
    }
};

inline long spin_site(const particle_config& w, long n, long r) {
    return standup_view(w, n).S(r);
}

inline spin_config lay_down(const particle_config& w, long n) {
    return detail::sector_config(w, n);
}

}  // namespace isingq
