#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Central numeric tolerances. Feasibility tolerances can be overridden per
// call (CLI --tol); the structural ones are fixed.
namespace tol {
inline constexpr double symmetry = 1e-12;        // symmetric-input check
inline constexpr double ortho = 1e-10;           // basis orthonormality
inline constexpr double eig_residual = 1e-9;     // L*phi = lambda*phi check
inline constexpr double cluster = 1e-7;          // |li - lj| <= cluster*(1+|li|)
inline constexpr double feasibility = 1e-7;      // constraint residuals
inline constexpr double psd = 1e-8;              // min_eig(Y) >= -psd
inline constexpr double zero_edge_rel = 1e-6;    // |L_st| <= rel*max(1, wmax)
inline constexpr double verify = 1e-7;           // independent oracle
inline constexpr double solver_converge = 1e-9;  // Dykstra stop
}  // namespace tol

}  // namespace isospec
