#pragma once

// Affine sections of the Y-space for external plotting: a coordinate plan
// maps grid points to symmetric matrices, each point is classified by
// membership and stamped with the bitmask of vanished edges.

#include <string>
#include <vector>

#include "isospec/structure.hpp"

namespace isospec {

struct SectionAxis {
    std::string name;
    double lo = 0.0, hi = 0.0, step = 1.0;
    int points() const;
};

struct SectionPlan {
    Matrix offset;                 // Y at the origin of the plan
    std::vector<Matrix> directions;
    std::vector<SectionAxis> axes; // same length as directions
};

struct SectionPoint {
    Vec coords;
    bool member = false;
    std::uint64_t zero_mask = 0;  // bit e set when edge e of g vanished
};

struct SectionCloud {
    std::vector<std::string> axis_names;
    std::vector<SectionPoint> points;
};

// Errors on a rank-deficient plan (dependent direction matrices).
SectionCloud section_scan(const SpectralStructure& s, const SectionPlan& plan,
                          double feas_tol = tol::feasibility);

// CSV: "# coords..., member, zero_mask", one row per grid point in
// row-major grid order.
std::string section_csv(const SectionCloud& cloud);

}  // namespace isospec
