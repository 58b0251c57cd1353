#include "isospec/section.hpp"

#include <cmath>

#include "isospec/common.hpp"

namespace isospec {

int SectionAxis::points() const {
    if (step <= 0.0) throw Error("grid step must be positive");
    if (hi < lo) return 0;
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

SectionCloud section_scan(const SpectralStructure& s, const SectionPlan& plan, double feas_tol) {
    const int d = s.tail_dim();
    const size_t ndirs = plan.directions.size();
    if (plan.axes.size() != ndirs) throw Error("plan axes and directions disagree");
    if (plan.offset.rows() != d || plan.offset.cols() != d)
        throw Error("plan offset has the wrong dimension");
    // rank check: the directions, viewed as vectors, must be independent
    {
        std::vector<Vec> flat;
        for (const auto& m : plan.directions) {
            if (m.rows() != d || m.cols() != d) throw Error("plan direction has the wrong dimension");
            flat.push_back(m.data());
        }
        for (size_t i = 0; i < flat.size(); ++i) {
            Vec v = flat[i];
            for (size_t j = 0; j < i; ++j) {
                const double denom = dot(flat[j], flat[j]);
                if (denom > 0.0) axpy(-dot(flat[j], v) / denom, flat[j], v);
            }
            if (norm2(v) <= 1e-10) throw Error("degenerate coordinate plan: dependent directions");
        }
    }

    SectionCloud cloud;
    for (const auto& a : plan.axes) cloud.axis_names.push_back(a.name);

    std::vector<int> sizes;
    long total = 1;
    for (const auto& a : plan.axes) {
        sizes.push_back(a.points());
        total *= sizes.back();
    }
    if (ndirs == 0 || total <= 0) return cloud;

    std::vector<int> idx(ndirs, 0);
    for (long it = 0; it < total; ++it) {
        Vec coords(ndirs);
        Matrix y = plan.offset;
        for (size_t a = 0; a < ndirs; ++a) {
            coords[a] = plan.axes[a].lo + plan.axes[a].step * idx[a];
            y += coords[a] * plan.directions[a];
        }
        const MembershipReport r = membership(s, y, feas_tol);
        std::uint64_t mask = 0;
        for (auto [u, v] : r.zero_edges) mask |= 1ULL << *s.g.edge_index(u, v);
        cloud.points.push_back({std::move(coords), r.is_member, mask});
        // row-major increment, last axis fastest
        for (int a = static_cast<int>(ndirs) - 1; a >= 0; --a) {
            if (++idx[a] < sizes[a]) break;
            idx[a] = 0;
        }
    }
    return cloud;
}

std::string section_csv(const SectionCloud& cloud) {
    std::string out = "# ";
    for (const auto& n : cloud.axis_names) out += n + ",";
    out += "member,zero_mask\n";
    for (const auto& p : cloud.points) {
        for (double c : p.coords) out += format_double(c) + ",";
        out += (p.member ? "1" : "0");
        out += "," + std::to_string(p.zero_mask) + "\n";
    }
    return out;
}

}  // namespace isospec
