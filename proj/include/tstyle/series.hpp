#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tstyle/errors.hpp"

namespace tstyle {

/**
 * A finite, time-ordered vector of real observations. The universal
 * currency of the toolkit: generators produce it, feature extractors and
 * losses consume it, windows of a dataset are instances of it.
 */
struct Series {
    std::vector<double> values;
    std::string label;  // optional provenance (file stem, generator tag, ...)

    Series() = default;
    explicit Series(std::vector<double> v, std::string l = {})
        : values(std::move(v)), label(std::move(l)) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Checks the Series invariants: at least 3 points, all of them finite.
inline void validate_series(const Series& s) {
    if (s.size() < 3) {
        throw SeriesTooShort("series '" + s.label + "' has " +
                             std::to_string(s.size()) + " points, need at least 3");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s.values[i])) {
            throw Error("series '" + s.label + "' has a non-finite value at index " +
                        std::to_string(i));
        }
    }
}

}  // namespace tstyle
