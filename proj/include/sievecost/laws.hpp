#pragma once

#include <cmath>

namespace sievecost {
namespace laws {

// Heuristic list-size and iteration-count laws, natural log.

inline double log_nv_center_list(int d) {
    return (0.2352 * d + 0.102 * std::log2(static_cast<double>(d)) + 2.45) *
           std::log(2.0);
}

inline double log_nv_initial_list(int d) {
    return std::log(static_cast<double>(d)) + log_nv_center_list(d);
}

inline double log_gauss_max_list(int d) {
    return (0.193 * d + 2.325) * std::log(2.0);
}

inline double log_gauss_iterations(int d) {
    return (0.283 * d + 0.335) * std::log(2.0);
}

}  // namespace laws
}  // namespace sievecost
