#pragma once

#include <stdexcept>
#include <string>

#include "trieig/bounds.hpp"
#include "trieig/invariance.hpp"
#include "trieig/pipeline.hpp"
#include "trieig/sym_tri.hpp"

namespace trieig {

/// Input rejected; the message carries file name and line:column where the
/// offending token or field lives.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    SymTriInterval matrix;
    std::string name;
    std::string comment;
};

/// JSON document: {"n": int, "a": [[lo,hi] x n], "b": [[lo,hi] x n-1],
/// "name"?: str, "comment"?: str}.
ProblemFile parse_problem_json(const std::string& text, const std::string& filename);

/// CSV rows a_lo,a_hi,b_lo,b_hi; the final row carries only a_lo,a_hi (there
/// is no off entry below the last diagonal). An optional non-numeric header
/// row is skipped. '#' starts a comment line.
ProblemFile parse_problem_csv(const std::string& text, const std::string& filename);

/// Load from disk; format chosen by `csv` (otherwise JSON).
ProblemFile load_problem(const std::string& path, bool csv = false);

std::string problem_to_json(const ProblemFile& problem);

/// Pretty-print a double with directed rounding at fixed decimals, away from
/// the interval interior (floor for lower endpoints, ceil for upper ones).
std::string format_directed(double value, int decimals, bool round_up);

}  // namespace trieig
