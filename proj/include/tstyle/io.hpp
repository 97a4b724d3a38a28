#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tstyle/dataset.hpp"
#include "tstyle/series.hpp"

namespace tstyle::io {

// File formats
//   series CSV : one value per row, optional single header line
//   window CSV : one window per row, comma separated, optional header line;
//                provenance goes to a sidecar "<stem>.meta.csv" with columns
//                n, content_idx, style_idx, seed (lineage columns empty for
//                plain windows)
//   manifest   : one sorted "key=value" line per entry
// Values are written with 17 significant digits, so read-back is exact.

/// Shortest text form of a double that parses back to the same bits.
std::string format_double(double v);

/**
 * Reads one numeric column of a CSV file as a Series. The column is
 * addressed by 0-based index ("0", "1", ...) or by header name; a header
 * line is detected automatically. The label is the file stem.
 */
Series ingest_csv(const std::string& path, const std::string& column = "0");

void write_series_csv(const Series& series, const std::string& path);

/// Reads a window CSV plus its meta sidecar when one exists.
WindowDataset read_window_csv(const std::string& path);

/// Writes the window CSV and its meta sidecar.
void write_window_csv(const WindowDataset& ds, const std::string& path);

/// Flat key=value manifest with sorted keys.
using Manifest = std::map<std::string, std::string>;

void write_manifest(const Manifest& manifest, const std::string& path);
Manifest read_manifest(const std::string& path);

/**
 * Writes an ordered list of named metrics either as a two-line CSV (header
 * and values) when the path ends in .csv, or as a single-line JSON object
 * otherwise.
 */
void write_report(const std::vector<std::pair<std::string, double>>& fields,
                  const std::string& path);

}  // namespace tstyle::io
