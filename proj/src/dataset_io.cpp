#include "copclass/dataset_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace copclass {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::string& path, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') parse_fail(path, line, "bad numeric field '" + field + "'");
  return v;
}

long parse_int(const std::string& field, const std::string& path, std::size_t line) {
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0') parse_fail(path, line, "bad integer field '" + field + "'");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& features,
                       const std::vector<int>& labels) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("write_dataset_csv: feature/label row counts differ");
  std::ofstream out = open_out(path);
  out << "label";
  for (Eigen::Index j = 0; j < features.cols(); ++j) out << ",f" << (j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < features.cols(); ++j) out << ',' << format_double(features(i, j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

LabeledData read_dataset_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_fail(path, line_no, "missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "label")
    parse_fail(path, line_no, "expected header 'label,f1,...'");
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j + 1] != "f" + std::to_string(j + 1))
      parse_fail(path, line_no, "unexpected feature column name '" + header[j + 1] + "'");
  }

  std::vector<int> labels;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != d + 1)
      parse_fail(path, line_no,
                 "expected " + std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
    labels.push_back(static_cast<int>(parse_int(fields[0], path, line_no)));
    for (std::size_t j = 0; j < d; ++j) values.push_back(parse_double(fields[j + 1], path, line_no));
  }
  if (labels.empty()) parse_fail(path, line_no, "no data rows");

  LabeledData data;
  data.labels = std::move(labels);
  data.features.resize(static_cast<Eigen::Index>(data.labels.size()), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < data.features.rows(); ++i)
    for (Eigen::Index j = 0; j < data.features.cols(); ++j)
      data.features(i, j) = values[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
  return data;
}

void write_predictions_csv(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out = open_out(path);
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<int> read_predictions_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "index,label") parse_fail(path, line_no, "bad header");
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) parse_fail(path, line_no, "expected 2 fields");
    if (parse_int(fields[0], path, line_no) != static_cast<long>(labels.size()))
      parse_fail(path, line_no, "out-of-order index");
    labels.push_back(static_cast<int>(parse_int(fields[1], path, line_no)));
  }
  return labels;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out = open_out(path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace copclass
