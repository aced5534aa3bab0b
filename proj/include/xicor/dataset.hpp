#pragma once

#include <istream>
#include <string>

#include "xicor/rankcore.hpp"

namespace xicor {

// Reads a delimited text dataset: a header row naming columns (two of which
// must be "x" and "y", case-insensitive), one observation per line. The
// delimiter is detected from the header (comma, tab or semicolon; otherwise
// whitespace). Rejects NaN/inf values, ragged rows and missing columns with
// 1-based line numbers. The returned sample is structurally parsed only;
// estimator preconditions (n >= 2, Y not constant) are checked by the
// estimators themselves.
PairedSample load_dataset(std::istream& in);
PairedSample load_dataset_file(const std::string& path);

} // namespace xicor
