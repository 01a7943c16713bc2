#include "surgact/kinematics.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "surgact/error.hpp"
#include "surgact/log.hpp"

namespace surgact {

double KinematicFrame::rotation_det(Index block) const {
    const double* r = values.data() + block + 3;
    return r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
           r[2] * (r[3] * r[7] - r[4] * r[6]);
}

Index kin_subset_dim(KinSubset s) {
    switch (s) {
        case KinSubset::None: return 0;
        case KinSubset::K38: return 38;
        case KinSubset::K14: return 14;
    }
    return 0;
}

const std::vector<Index>& kin_subset_indices(KinSubset s) {
    static const std::vector<Index> k38 = [] {
        std::vector<Index> v;
        for (Index i = KinematicFrame::kPsmLeft; i < KinematicFrame::kDim; ++i) v.push_back(i);
        return v;
    }();
    static const std::vector<Index> k14 = [] {
        std::vector<Index> v;
        for (Index base : {KinematicFrame::kPsmLeft, KinematicFrame::kPsmRight}) {
            for (Index j = 0; j < 3; ++j) v.push_back(base + j);        // position
            for (Index j = 12; j < 15; ++j) v.push_back(base + j);      // linear velocity
            v.push_back(base + 18);                                     // gripper angle
        }
        return v;
    }();
    static const std::vector<Index> none;
    switch (s) {
        case KinSubset::K38: return k38;
        case KinSubset::K14: return k14;
        case KinSubset::None: return none;
    }
    return none;
}

std::vector<double> select_kinematic_subset(const KinematicFrame& frame, KinSubset s) {
    const auto& idx = kin_subset_indices(s);
    std::vector<double> out;
    out.reserve(idx.size());
    for (Index i : idx) out.push_back(frame.values[static_cast<std::size_t>(i)]);
    return out;
}

std::array<double, 6> trajectory_mm(const KinematicFrame& frame) {
    std::array<double, 6> t{};
    for (Index j = 0; j < 3; ++j) {
        t[static_cast<std::size_t>(j)] = frame.values[static_cast<std::size_t>(KinematicFrame::kPsmLeft + j)] * 1000.0;
        t[static_cast<std::size_t>(j + 3)] =
            frame.values[static_cast<std::size_t>(KinematicFrame::kPsmRight + j)] * 1000.0;
    }
    return t;
}

std::vector<KinematicFrame> parse_kinematics(std::istream& in, const std::string& source_name) {
    std::vector<KinematicFrame> frames;
    std::string line;
    Index row = 0;
    Index det_warnings = 0;
    while (std::getline(in, line)) {
        ++row;
        // skip blank lines
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (blank) continue;

        KinematicFrame frame;
        const char* p = line.c_str();
        Index col = 0;
        while (true) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) break;  // no more numbers
            if (col >= KinematicFrame::kDim) {
                ++col;  // keep counting for the error message
                p = end;
                continue;
            }
            frame.values[static_cast<std::size_t>(col)] = v;
            ++col;
            p = end;
        }
        // anything left that is not whitespace is a bad token
        while (*p && std::isspace(static_cast<unsigned char>(*p))) ++p;
        if (*p != '\0')
            throw DataError(source_name + ": non-numeric token at row " + std::to_string(row));
        if (col != KinematicFrame::kDim)
            throw DataError(source_name + ": expected 76 columns, got " + std::to_string(col) +
                            " at row " + std::to_string(row));
        for (Index block :
             {Index(0), KinematicFrame::kBlockLen, KinematicFrame::kPsmLeft, KinematicFrame::kPsmRight}) {
            if (std::abs(frame.rotation_det(block) - 1.0) >= 0.05) {
                ++det_warnings;
                break;
            }
        }
        frames.push_back(frame);
    }
    if (det_warnings > 0)
        log::warn(source_name + ": " + std::to_string(det_warnings) +
                  " frame(s) with rotation determinant off unity by >= 0.05");
    return frames;
}

std::vector<KinematicFrame> parse_kinematics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open kinematics file: " + path);
    return parse_kinematics(in, path);
}

}  // namespace surgact
