#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

// thrown when an iterative or escalating scheme exhausts its budget
// (oracle dimension ladder, quadrature refinement, series caps)
struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace squeeze
