#include "surgact/feature_matrix.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "surgact/error.hpp"

namespace surgact {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'F', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

std::string feature_kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::Context: return "C";
        case FeatureKind::VRes: return "V_Res";
        case FeatureKind::VSpatial: return "V_Spatial";
        case FeatureKind::VSeg: return "V_Seg";
    }
    return "?";
}

void write_feature_file(const std::string& path, const Mat& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open feature file for writing: " + path);
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(values.rows));
    put_u32(out, static_cast<std::uint32_t>(values.cols));
    for (double v : values.data) {
        const float f = static_cast<float>(v);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        put_u32(out, bits);
    }
    if (!out) throw DataError("write failed: " + path);
}

Mat read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open feature file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<double> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            if (cell.empty()) continue;
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DataError(path + ": non-numeric cell at line " + std::to_string(lineno));
            }
        }
        if (row.empty()) continue;
        if (!rows.empty() && rows.front().size() != row.size())
            throw DataError(path + ": ragged row at line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path + ": empty feature file");
    Mat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return m;
}

Mat read_feature_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open feature file: " + path);
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) return read_feature_csv(path);
    const std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw DataError(path + ": unsupported feature container version " + std::to_string(version));
    const std::uint32_t rows = get_u32(in);
    const std::uint32_t cols = get_u32(in);
    if (!in) throw DataError(path + ": truncated header");
    Mat m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (auto& v : m.data) {
        const std::uint32_t bits = get_u32(in);
        if (!in) throw DataError(path + ": truncated payload");
        float f;
        std::memcpy(&f, &bits, 4);
        v = static_cast<double>(f);
    }
    return m;
}

}  // namespace surgact
