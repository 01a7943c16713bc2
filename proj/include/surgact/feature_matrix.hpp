#pragma once

#include <string>

#include "surgact/tensor.hpp"

namespace surgact {

// Precomputed per-frame feature modalities consumed as files; the deep
// extractors that produce them are upstream of this pipeline.
enum class FeatureKind { Context, VRes, VSpatial, VSeg };

std::string feature_kind_name(FeatureKind k);

struct FeatureMatrix {
    FeatureKind kind = FeatureKind::Context;
    Mat values;  // frames x dim
};

// Binary container: 16-byte header (magic "SGFM", u32 version, u32 rows,
// u32 cols, little-endian) followed by rows*cols little-endian f32 values.
// read_feature_file falls back to CSV when the magic does not match.
void write_feature_file(const std::string& path, const Mat& values);
Mat read_feature_file(const std::string& path);

Mat read_feature_csv(const std::string& path);

}  // namespace surgact
