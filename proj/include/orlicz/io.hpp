#pragma once

#include "orlicz/euclidean.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/star.hpp"

#include <string>
#include <vector>

namespace orlicz::io {

/// Rows of delimited text (comma or whitespace); blank lines and lines
/// starting with '#' are skipped. Every row must have the same width.
std::vector<std::vector<double>> read_table(const std::string& path);

/// Rows "coords..., weight, value" -> density field on an abstract space
/// whose coordinates are the leading columns.
DensityField read_density(const std::string& path);
void write_density(const std::string& path, const DensityField& f);

/// Rows "node coords (2 or 3), sigma weight, radial value".
StarBodyGrid read_body(const std::string& path);
void write_body(const std::string& path, const StarBodyGrid& k);

/// Rows "x (, y), weight, value" on a symmetric tensor grid.
EuclideanField read_euclidean(const std::string& path);
void write_euclidean(const std::string& path, const EuclideanField& p);

/// Writes text atomically enough for reports: truncates and writes.
void write_text(const std::string& path, const std::string& text);

}  // namespace orlicz::io
