#pragma once

// Ensemble documents:
//
//   {
//     "dim": 2,
//     "label": "trine",
//     "members": [
//       {"p": 0.33333333333333331, "amplitudes": [[1, 0], [0, 0]]},
//       ...
//     ]
//   }
//
// Each amplitude is a [re, im] pair; numbers are written with 17
// significant digits so a document re-parses to the identical ensemble.

#include <filesystem>
#include <string>
#include <string_view>

#include "gramq/ensemble.hpp"

namespace gramq {

std::string serialize_ensemble(const Ensemble& e);

/// Throws ParseError (with line or field path) for malformed documents and
/// InvariantViolation (with the member index) for invalid ensembles.
Ensemble parse_ensemble(std::string_view text);

Ensemble load_ensemble(const std::filesystem::path& path);

/// A canonical name ("trine", "b92", ...) or a path to an ensemble document.
Ensemble resolve_ensemble(std::string_view ref, double b92_overlap = kB92DefaultOverlap);

/// printf("%.17g")
std::string format_double(double v);

}  // namespace gramq
