#pragma once

// PSD feasibility over a spectrahedral structure: decide whether some PSD Y
// satisfies L_st = 0 on a forced-zero set and L_st <= 0 on the remaining
// edges.
//
// Three-stage solver:
//   1. ray test per forced pair (rank-one colinearity criterion): when the
//      coefficient vectors c_s, c_t are colinear, <Y, M_st> is confined to a
//      ray over the PSD cone, so a target off that ray is a certificate of
//      infeasibility;
//   2. least-squares consistency of the forced-zero equality system: an
//      inconsistent system is a certificate of infeasibility, and a unique
//      solution reduces the problem to one direct check;
//   3. Dykstra's cyclic corrected projections (equalities, halfspaces, PSD
//      cone), started from the graph's own Y, with a no-progress stall
//      detector. Budget exhaustion or a stall is reported as "not found" —
//      which is NOT a proof of infeasibility.

#include <optional>
#include <string>
#include <vector>

#include "isospec/structure.hpp"

namespace isospec {

struct FeasibilityProblem {
    const SpectralStructure* structure = nullptr;
    std::vector<VertexPair> forced_zero;      // requested deletions; non-edges are implicit
    std::vector<VertexPair> inequality_pairs; // remaining edges (filled by make_problem)
};

FeasibilityProblem make_problem(const SpectralStructure& s,
                                const std::vector<VertexPair>& deletions);

enum class FeasibilityStatus { found, infeasible, not_found };

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::not_found;
    std::optional<Matrix> y;
    std::string reason;       // which stage decided, human-readable
    long iterations = 0;      // Dykstra cycles used
    double final_residual = 0.0;
};

struct SolverOptions {
    long budget = 50000;
    double converge_tol = tol::solver_converge;
    double feas_tol = tol::feasibility;
    long stall_window = 200;
    double stall_factor = 0.98;  // required residual shrink per window
};

FeasibilityResult solve_feasibility(const FeasibilityProblem& p, const SolverOptions& opt = {});

const char* to_string(FeasibilityStatus s);

}  // namespace isospec
