#include "tstyle/dataset.hpp"

#include <string>

namespace tstyle {

void validate_dataset(const WindowDataset& ds) {
    if (ds.windows.size() != ds.meta.size()) {
        throw Error("dataset has " + std::to_string(ds.windows.size()) +
                    " windows but " + std::to_string(ds.meta.size()) +
                    " provenance records");
    }
    if (ds.empty()) return;
    const std::size_t len = ds.windows[0].size();
    if (len < 3) {
        throw SeriesTooShort("windows must have at least 3 points, got " +
                             std::to_string(len));
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.windows[i].size() != len) {
            throw LengthMismatch("window " + std::to_string(i) + " has length " +
                                 std::to_string(ds.windows[i].size()) +
                                 ", expected " + std::to_string(len));
        }
    }
}

}  // namespace tstyle
