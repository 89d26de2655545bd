#pragma once

#include <string>
#include <vector>

#include "isingq/config.hpp"

namespace isingq::test {

inline spin_config cfg(long start, const std::string& window) {
    std::vector<signed char> w;
    for (char ch : window) w.push_back(ch == '+' ? +1 : -1);
    return canonicalize(start, std::move(w));
}

// the worked example used throughout: spins + at {-4,-2,1,2,4,5,...}, - elsewhere
inline spin_config worked_example() { return cfg(-4, "+-+--++-"); }

}  // namespace isingq::test
