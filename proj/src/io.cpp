#include "tstyle/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tstyle::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{}
                                               : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return errno == 0 && end == text.c_str() + text.size();
}

bool parse_u64(const std::string& text, std::uint64_t& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtoull(text.c_str(), &end, 10);
    return errno == 0 && end == text.c_str() + text.size();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool looks_like_header(const std::string& line) {
    for (const std::string& cell : split_csv_line(line)) {
        double v;
        if (!parse_double(cell, v)) return true;
    }
    return false;
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string sidecar_path(const std::string& path) {
    std::filesystem::path p(path);
    std::filesystem::path side = p.parent_path() / (p.stem().string() + ".meta.csv");
    return side.string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Series ingest_csv(const std::string& path, const std::string& column) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError(path, 1, "file is empty");
    }

    const bool has_header = looks_like_header(lines[0]);
    std::size_t col = 0;
    bool by_index = !column.empty() &&
                    column.find_first_not_of("0123456789") == std::string::npos;
    if (by_index) {
        col = static_cast<std::size_t>(std::strtoull(column.c_str(), nullptr, 10));
    } else {
        if (!has_header) {
            throw ParseError(path, 1, "column '" + column + "' needs a header line");
        }
        const std::vector<std::string> header = split_csv_line(lines[0]);
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == column) {
                col = i;
                found = true;
                break;
            }
        }
        if (!found) {
            throw ParseError(path, 1, "no column named '" + column + "'");
        }
    }

    Series out;
    out.label = file_stem(path);
    for (std::size_t row = has_header ? 1 : 0; row < lines.size(); ++row) {
        if (lines[row].empty()) continue;
        const std::vector<std::string> cells = split_csv_line(lines[row]);
        if (col >= cells.size()) {
            throw ParseError(path, row + 1, "row has only " +
                                                std::to_string(cells.size()) +
                                                " columns, wanted index " +
                                                std::to_string(col));
        }
        double v;
        if (!parse_double(cells[col], v)) {
            throw ParseError(path, row + 1, "cannot parse '" + cells[col] + "'");
        }
        out.values.push_back(v);
    }
    if (out.size() < 3) {
        throw SeriesTooShort(path + " has " + std::to_string(out.size()) +
                             " data rows, need at least 3");
    }
    return out;
}

void write_series_csv(const Series& series, const std::string& path) {
    std::ofstream out = open_out(path);
    for (double v : series.values) {
        out << format_double(v) << '\n';
    }
}

WindowDataset read_window_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError(path, 1, "file is empty");
    }

    WindowDataset ds;
    const std::string stem = file_stem(path);
    const bool has_header = looks_like_header(lines[0]);
    std::size_t expected = 0;
    for (std::size_t row = has_header ? 1 : 0; row < lines.size(); ++row) {
        if (lines[row].empty()) continue;
        const std::vector<std::string> cells = split_csv_line(lines[row]);
        if (expected == 0) {
            expected = cells.size();
            if (expected < 3) {
                throw SeriesTooShort(path + ": windows must have at least 3 values");
            }
        } else if (cells.size() != expected) {
            throw ParseError(path, row + 1, "expected " + std::to_string(expected) +
                                                " values, got " +
                                                std::to_string(cells.size()));
        }
        Series window;
        window.label = stem;
        window.values.reserve(cells.size());
        for (const std::string& cell : cells) {
            double v;
            if (!parse_double(cell, v)) {
                throw ParseError(path, row + 1, "cannot parse '" + cell + "'");
            }
            window.values.push_back(v);
        }
        WindowMeta meta;
        meta.source = stem;
        meta.start = static_cast<std::int64_t>(ds.size()) + 1;
        ds.push(std::move(window), std::move(meta));
    }
    if (ds.empty()) {
        throw ParseError(path, 1, "no data rows");
    }

    // merge lineage from the sidecar when present
    const std::string side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        const std::vector<std::string> meta_lines = read_lines(side);
        for (std::size_t row = 1; row < meta_lines.size(); ++row) {
            if (meta_lines[row].empty()) continue;
            const std::vector<std::string> cells = split_csv_line(meta_lines[row]);
            if (cells.size() != 4) {
                throw ParseError(side, row + 1, "expected n,content_idx,style_idx,seed");
            }
            const std::size_t i = row - 1;
            if (i >= ds.size()) {
                throw ParseError(side, row + 1, "more meta rows than windows");
            }
            std::uint64_t cidx, sidx, seed;
            if (parse_u64(cells[1], cidx) && parse_u64(cells[2], sidx) &&
                parse_u64(cells[3], seed)) {
                ds.meta[i].has_lineage = true;
                ds.meta[i].content_idx = static_cast<std::int64_t>(cidx);
                ds.meta[i].style_idx = static_cast<std::int64_t>(sidx);
                ds.meta[i].seed = seed;
            }
        }
    }

    validate_dataset(ds);
    return ds;
}

void write_window_csv(const WindowDataset& ds, const std::string& path) {
    validate_dataset(ds);
    std::ofstream out = open_out(path);
    for (const Series& w : ds.windows) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out << ',';
            out << format_double(w.values[i]);
        }
        out << '\n';
    }

    std::ofstream side = open_out(sidecar_path(path));
    side << "n,content_idx,style_idx,seed\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        side << (i + 1) << ',';
        if (ds.meta[i].has_lineage) {
            side << ds.meta[i].content_idx << ',' << ds.meta[i].style_idx << ','
                 << ds.meta[i].seed;
        } else {
            side << ",,";
        }
        side << '\n';
    }
}

void write_manifest(const Manifest& manifest, const std::string& path) {
    std::ofstream out = open_out(path);
    for (const auto& [key, value] : manifest) {
        out << key << '=' << value << '\n';
    }
}

Manifest read_manifest(const std::string& path) {
    Manifest manifest;
    std::size_t row = 0;
    for (const std::string& line : read_lines(path)) {
        ++row;
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path, row, "expected key=value");
        }
        manifest[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return manifest;
}

void write_report(const std::vector<std::pair<std::string, double>>& fields,
                  const std::string& path) {
    std::ofstream out = open_out(path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << fields[i].first;
        }
        out << '\n';
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << format_double(fields[i].second);
        }
        out << '\n';
    } else {
        nlohmann::ordered_json j;
        for (const auto& [key, value] : fields) j[key] = value;
        out << j.dump() << '\n';
    }
}

}  // namespace tstyle::io
