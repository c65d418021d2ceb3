#pragma once

#include "trieig/bounds.hpp"
#include "trieig/invariance.hpp"
#include "trieig/sym_tri.hpp"

namespace trieig {

enum class InvarianceMode {
    Off,   // never certify; status stays InnerEstimate unless refinement fires
    Fast,  // sufficient separation conditions only
    Full   // also enumerate admissible zero-index sets (exponential, capped)
};

struct AnalysisOptions {
    double tol = -1.0;  // <= 0 selects 1e-12 * scale of the input matrix
    InvarianceMode invariance = InvarianceMode::Fast;
    bool refine = true;   // eps-probe upgrade when invariancy is not certified
    double eps = -1.0;    // <= 0 selects 1e-6 * scale
    int threads = 0;      // 0 = hardware concurrency
    bool fastest_first = false;
};

struct AnalysisResult {
    EigBoundsReport report;
    /// Whole-matrix verdict; for a matrix that splits into blocks this is the
    /// conjunction of the per-block verdicts (witness indices are shifted to
    /// whole-matrix rows).
    InvarianceVerdict verdict;
};

/// Full pipeline: normalize, split into blocks, decide invariancy per block,
/// run the endpoint computation in both directions, merge block spectra,
/// optionally upgrade via disjointness probes, and map back to the original
/// coordinates with outward-widened endpoints.
AnalysisResult analyze(const SymTriInterval& m, const AnalysisOptions& opts = {});

EigBoundsReport compute_bounds(const SymTriInterval& m, const AnalysisOptions& opts = {});

/// The four extremal endpoints of an arbitrary interval matrix (normalization
/// and the diagonal shift handled internally), as the ranges of the largest
/// and smallest eigenvalue.
struct ExtremalReport {
    Interval lambda1;  // [min lambda_1, max lambda_1], outward-widened
    Interval lambdan;
};
ExtremalReport extremal_endpoints(const SymTriInterval& m, double tol);

}  // namespace trieig
