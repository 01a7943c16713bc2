#pragma once

#include <istream>
#include <string>
#include <vector>

#include "surgact/tensor.hpp"

namespace surgact {

// Gesture ids: 1..15 map to G1..G15; 0 is the distinguished Unlabeled value
// assigned to frames outside every transcript interval.
constexpr int kUnlabeled = 0;
constexpr int kMaxGestureId = 15;

std::string gesture_name(int id);
int parse_gesture_name(const std::string& token);  // throws DataError on unknown labels

struct GestureInterval {
    Index start_frame = 0;  // 1-based, inclusive
    Index end_frame = 0;    // 1-based, inclusive
    int label = kUnlabeled;
};

// Ordered, non-overlapping gesture intervals for one trial.
struct GestureTranscript {
    std::vector<GestureInterval> intervals;

    int label_at(Index frame_1based) const;
};

// Lines of "start end Gk" (1-based inclusive frames). The result is sorted
// by start; overlapping intervals or unknown labels raise DataError.
GestureTranscript parse_transcript(std::istream& in, const std::string& source_name);
GestureTranscript parse_transcript(const std::string& path);

}  // namespace surgact
