#include "pkt/io.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pkt {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

long long parse_count(std::string_view tok, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad decimal value '" + std::string(tok) + "'");
  }
  return v;
}

FeatureMatrix read_features(std::istream& in) {
  std::string line;
  bool found = false;
  while (std::getline(in, line)) {
    if (!is_blank(line)) {
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("feature file: empty");

  std::istringstream header(line);
  std::string n_tok, d_tok, extra;
  if (!(header >> n_tok >> d_tok) || (header >> extra)) {
    throw std::invalid_argument("feature file: header must be 'n d'");
  }
  const long long n = parse_count(n_tok, "feature file header");
  const long long d = parse_count(d_tok, "feature file header");
  if (n < 1 || d < 1) throw std::invalid_argument("feature file: n and d must be >= 1");

  FeatureMatrix m(n, d);
  for (long long r = 0; r < n; ++r) {
    do {
      if (!std::getline(in, line)) {
        throw std::invalid_argument("feature file: expected " + std::to_string(n) +
                                    " rows, found " + std::to_string(r));
      }
    } while (is_blank(line));
    std::istringstream ss(line);
    std::string tok;
    long long c = 0;
    while (c <= d && ss >> tok) {
      if (c < d) m(r, c) = parse_double(tok);
      ++c;
    }
    if (c != d) {
      throw std::invalid_argument("feature file: row " + std::to_string(r + 1) +
                                  " does not have " + std::to_string(d) + " values");
    }
  }
  while (std::getline(in, line)) {
    if (!is_blank(line)) throw std::invalid_argument("feature file: trailing data after rows");
  }
  return m;
}

void write_features(std::ostream& out, const FeatureMatrix& feats) {
  out << feats.rows() << ' ' << feats.cols() << '\n';
  for (Eigen::Index r = 0; r < feats.rows(); ++r) {
    for (Eigen::Index c = 0; c < feats.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(feats(r, c));
    }
    out << '\n';
  }
}

std::vector<int> read_labels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    std::istringstream ss(line);
    std::string tok, extra;
    ss >> tok;
    if (ss >> extra) throw std::invalid_argument("label file: one label per line");
    const long long v = parse_count(tok, "label file");
    if (v < 0 || v > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("label file: labels must be non-negative integers");
    }
    labels.push_back(static_cast<int>(v));
  }
  if (labels.empty()) throw std::invalid_argument("label file: empty");
  return labels;
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_features(in);
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& feats) {
  auto out = open_out(path);
  write_features(out, feats);
  finish_write(out, path);
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in);
}

StudentModel load_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_model(in);
}

void save_model(const std::filesystem::path& path, const StudentModel& model) {
  auto out = open_out(path);
  write_model(out, model);
  finish_write(out, path);
}

}  // namespace pkt
