#pragma once

#include <array>
#include <istream>
#include <string>
#include <vector>

#include "surgact/tensor.hpp"

namespace surgact {

// One 30 Hz sample of the 76 kinematic variables, in file order:
// four 19-value blocks (MTM-left, MTM-right, PSM-left, PSM-right), each
// holding position p (3), rotation R (9, row-major), linear velocity v (3),
// angular velocity w (3), gripper angle theta (1).
struct KinematicFrame {
    static constexpr Index kDim = 76;
    std::array<double, kDim> values{};

    static constexpr Index kBlockLen = 19;
    static constexpr Index kPsmLeft = 38;   // block offsets
    static constexpr Index kPsmRight = 57;

    double rotation_det(Index block) const;  // det of the 3x3 block at offset block+3
};

// Kinematic feature subsets from the patient-side manipulators.
enum class KinSubset { None, K38, K14 };

Index kin_subset_dim(KinSubset s);

// Frame indices selected by each subset. K14 is a subsequence of K38:
// per PSM arm, position (3), linear velocity (3) and gripper angle (1).
const std::vector<Index>& kin_subset_indices(KinSubset s);

std::vector<double> select_kinematic_subset(const KinematicFrame& frame, KinSubset s);

// Cartesian positions of both PSM end-effectors, converted to millimeters.
std::array<double, 6> trajectory_mm(const KinematicFrame& frame);

// Whitespace-separated text, 76 numeric columns per row. Malformed rows
// raise DataError naming the 1-based row; rotation blocks with |det-1| >=
// 0.05 are accepted with a warning.
std::vector<KinematicFrame> parse_kinematics(std::istream& in, const std::string& source_name);
std::vector<KinematicFrame> parse_kinematics(const std::string& path);

}  // namespace surgact
