#include "surgact/transcript.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "surgact/error.hpp"

namespace surgact {

std::string gesture_name(int id) {
    if (id == kUnlabeled) return "Unlabeled";
    return "G" + std::to_string(id);
}

int parse_gesture_name(const std::string& token) {
    if (token == "Unlabeled") return kUnlabeled;
    if (token.size() >= 2 && token[0] == 'G') {
        int id = 0;
        for (std::size_t i = 1; i < token.size(); ++i) {
            if (token[i] < '0' || token[i] > '9') id = -1;
            if (id < 0) break;
            id = id * 10 + (token[i] - '0');
        }
        if (id >= 1 && id <= kMaxGestureId) return id;
    }
    throw DataError("unknown gesture label '" + token + "'");
}

int GestureTranscript::label_at(Index frame_1based) const {
    for (const auto& iv : intervals)
        if (frame_1based >= iv.start_frame && frame_1based <= iv.end_frame) return iv.label;
    return kUnlabeled;
}

GestureTranscript parse_transcript(std::istream& in, const std::string& source_name) {
    GestureTranscript out;
    std::string line;
    Index row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::istringstream ls(line);
        long long start = 0, end = 0;
        std::string label;
        if (!(ls >> start)) continue;  // blank line
        if (!(ls >> end >> label))
            throw DataError(source_name + ": malformed transcript line " + std::to_string(row));
        if (start < 1 || end < start)
            throw DataError(source_name + ": bad interval [" + std::to_string(start) + "," +
                            std::to_string(end) + "] at line " + std::to_string(row));
        GestureInterval iv;
        iv.start_frame = static_cast<Index>(start);
        iv.end_frame = static_cast<Index>(end);
        try {
            iv.label = parse_gesture_name(label);
        } catch (const DataError&) {
            throw DataError(source_name + ": unknown gesture label '" + label + "' at line " +
                            std::to_string(row));
        }
        out.intervals.push_back(iv);
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const GestureInterval& a, const GestureInterval& b) { return a.start_frame < b.start_frame; });
    for (std::size_t i = 1; i < out.intervals.size(); ++i) {
        if (out.intervals[i].start_frame <= out.intervals[i - 1].end_frame)
            throw DataError(source_name + ": overlapping intervals [" +
                            std::to_string(out.intervals[i - 1].start_frame) + "," +
                            std::to_string(out.intervals[i - 1].end_frame) + "] and [" +
                            std::to_string(out.intervals[i].start_frame) + "," +
                            std::to_string(out.intervals[i].end_frame) + "]");
    }
    return out;
}

GestureTranscript parse_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open transcript file: " + path);
    return parse_transcript(in, path);
}

}  // namespace surgact
