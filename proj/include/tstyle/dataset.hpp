#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tstyle/series.hpp"

namespace tstyle {

/**
 * Provenance of one window. Every window records where it came from;
 * stylized windows additionally record the content/style sample indices
 * (0-based into their datasets) and the sub-seed of the run that made them.
 */
struct WindowMeta {
    std::string source;        // label of the originating series or file stem
    std::int64_t start = 0;    // 1-based start index in the source series
    bool has_lineage = false;  // true for stylized windows
    std::int64_t content_idx = -1;
    std::int64_t style_idx = -1;
    std::uint64_t seed = 0;
};

/// An ordered collection of equal-length windows with per-window provenance.
struct WindowDataset {
    std::vector<Series> windows;
    std::vector<WindowMeta> meta;

    std::size_t size() const { return windows.size(); }
    bool empty() const { return windows.empty(); }
    std::size_t window_length() const { return windows.empty() ? 0 : windows[0].size(); }

    void push(Series w, WindowMeta m) {
        windows.push_back(std::move(w));
        meta.push_back(std::move(m));
    }
};

/// Checks the WindowDataset invariants: equal window lengths >= 3 and
/// provenance arrays in sync.
void validate_dataset(const WindowDataset& ds);

}  // namespace tstyle
