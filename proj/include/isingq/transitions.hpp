#pragma once

#include <string>
#include <vector>

#include "rational.hpp"

namespace isingq {

/* Move descriptor shared by every generator. For spin swaps i and j are the
 * swapped sites; for particle hops i/j are the origin/target site indices
 * (site -i to site -j, 0 meaning the boundary), m is the particle index
 * within the stack (or the block size for the natural dynamics), and dist
 * is the displacement of the underlying spin swap. */
struct move_info {
    enum class kind { spin_swap, hop_right, hop_left, boundary_in, boundary_out };
    kind k = kind::spin_swap;
    long i = 0;
    long j = 0;
    long m = 0;
    long dist = 0;

    std::string str() const {
        switch (k) {
            case kind::spin_swap:
                return "swap(" + std::to_string(i) + "," + std::to_string(j) + ")";
            case kind::hop_right:
                return "right(-" + std::to_string(i) + "->-" + std::to_string(j) + ",m=" +
                       std::to_string(m) + ")";
            case kind::hop_left:
                return "left(-" + std::to_string(i) + "->-" + std::to_string(j) + ",m=" +
                       std::to_string(m) + ")";
            case kind::boundary_in:
                return "in(->-" + std::to_string(j) + ",m=" + std::to_string(m) + ")";
            case kind::boundary_out:
                return "out(-" + std::to_string(i) + "->,m=" + std::to_string(m) + ")";
        }
        return "?";
    }
};

template <class State>
struct transition {
    State to;
    scalar rate;
    move_info move;
};

}  // namespace isingq
