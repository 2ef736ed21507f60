#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pkt/student.hpp"
#include "pkt/types.hpp"

namespace pkt {

// Feature files: a "n d" header line, then n lines of d decimals.
// Label files: one non-negative integer per line.
// Parse errors throw std::invalid_argument; open/read/write failures IoError.

FeatureMatrix read_features(std::istream& in);
void write_features(std::ostream& out, const FeatureMatrix& feats);
std::vector<int> read_labels(std::istream& in);

FeatureMatrix load_features(const std::filesystem::path& path);
void save_features(const std::filesystem::path& path, const FeatureMatrix& feats);
std::vector<int> load_labels(const std::filesystem::path& path);
StudentModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const StudentModel& model);

/// %.17g rendering; reads back to the identical double.
std::string format_double(double v);

/// Whole-token decimal parse; throws std::invalid_argument on junk or
/// non-finite values.
double parse_double(std::string_view token);

}  // namespace pkt
