#pragma once

#include "blda/dataset.hpp"
#include "blda/types.hpp"

#include <string>
#include <vector>

namespace blda {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// RFC 4180 field quoting: quotes fields containing comma, quote, CR or LF.
std::string csv_quote(const std::string& field);

/// Join pre-formatted fields into one CSV record (no trailing newline).
std::string csv_row(const std::vector<std::string>& fields);

/// Projection file format: one header line "n d method seed" followed by n
/// rows of d space-separated values, written so that load returns the matrix
/// bit-for-bit.
void save_projection(const std::string& path, const ProjectionMatrix& w);
ProjectionMatrix load_projection(const std::string& path);

/// Write a dataset as CSV with a trailing integer label column and a header.
void save_dataset_csv(const std::string& path, const LabeledDataset& data);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace blda
