#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace copclass {

// Formats a double with 17 significant digits (lossless round trip).
std::string format_double(double value);

struct LabeledData {
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

// Dataset CSV: header "label,f1,...,fd"; integer labels, full-precision
// features.
void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& features,
                       const std::vector<int>& labels);
LabeledData read_dataset_csv(const std::string& path);

// Predictions CSV: header "index,label".
void write_predictions_csv(const std::string& path, const std::vector<int>& labels);
std::vector<int> read_predictions_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace copclass
