#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trieig/sturm.hpp"
#include "trieig/sym_tri.hpp"

namespace trieig {

/// Exactness of a bounds report. Exact: endpoints are the true extrema of
/// every eigenvalue set. InnerEstimate: every reported value is attained by a
/// member matrix, but the true sets may be larger. Outer: mixed-sign
/// off-diagonal intervals were widened during normalization.
enum class ExactnessStatus { Exact, InnerEstimate, Outer };

const char* to_string(ExactnessStatus s);

/// Endpoint choice per entry (true = upper endpoint).
struct VertexSelection {
    std::vector<bool> diag_upper;
    std::vector<bool> off_upper;

    bool operator==(const VertexSelection&) const = default;
};

/// One direction (upper or lower endpoints) of the sign-invariancy
/// computation: per-index endpoint values plus the attaining vertex
/// selections, expressed against the matrix the computation ran on.
struct DirectionalBounds {
    std::vector<double> endpoints;
    std::vector<VertexSelection> witnesses;
    bool ambiguous_sign = false;  // some midpoint eigenvector entry was numerically zero
    std::vector<std::string> notes;
};

/// Eigenvalue ranges of a symmetric tridiagonal interval matrix, one interval
/// per index k (descending, k = 1 largest), plus the vertex matrices
/// attaining each endpoint and the exactness status.
struct EigBoundsReport {
    SymTriInterval domain;      // the matrix this report describes
    SymTriInterval normalized;  // nonnegative form the selections refer to
    NormalizationRecord record;

    std::vector<Interval> intervals;  // outward-widened, in domain coordinates
    std::vector<double> raw_lo, raw_hi;  // computed endpoints before widening
    std::vector<VertexSelection> upper_sel, lower_sel;  // against `normalized`
    ExactnessStatus status = ExactnessStatus::InnerEstimate;
    std::vector<std::string> notes;
    double tol = 0.0;

    int order() const { return domain.order(); }
    const Interval& interval(int k) const { return intervals[static_cast<std::size_t>(k - 1)]; }

    /// Attaining vertex matrices in domain coordinates (k is 1-based).
    SymTri upper_witness(int k) const;
    SymTri lower_witness(int k) const;
};

/// Upper endpoints of all eigenvalue sets via the midpoint-eigenvector sign
/// rule: diag at upper endpoints; off entry i at its upper endpoint exactly
/// when x_i x_{i+1} > 0 for the midpoint eigenvector x of index k. Exact
/// under sign invariancy, otherwise an inner estimate. Requires a nonnegative
/// matrix with every off upper bound positive (split blocks first).
/// tol <= 0 selects 1e-12 * scale. A zero sign selects the lower endpoint and
/// flags the result ambiguous.
DirectionalBounds upper_bounds_sign_invariant(const SymTriInterval& m, double tol, int threads = 0);

/// Lower endpoints via the reduction to the entrywise-negated matrix;
/// endpoints and witnesses are mapped back to the coordinates of m.
DirectionalBounds lower_bounds_sign_invariant(const SymTriInterval& m, double tol, int threads = 0);

/// The four assumption-free extremal endpoints: the extremes of the largest
/// and smallest eigenvalue sets, each attained at a single vertex matrix
/// (off-diagonals all upper for lambda_1 max / lambda_n min, all lower for
/// the other two; diagonal follows the endpoint direction). Requires a
/// nonnegative matrix.
struct ExtremalBounds {
    double lambda1_hi = 0.0;
    double lambda1_lo = 0.0;
    double lambdan_hi = 0.0;
    double lambdan_lo = 0.0;
};
ExtremalBounds extremal_bounds(const SymTriInterval& m, double tol);

/// Number of off entries selected at their upper endpoint by a zero-free
/// sign pattern (= consecutive sign agreements); equals n-k for the k-th
/// pattern. Throws on zero entries.
int cardinality_of_upper_selection(const SignPattern& pattern);

/// Three-valued answer for decision procedures: Undecided is returned when
/// the comparison falls inside the numerical widening band.
enum class Tristate { False = 0, True = 1, Undecided = 2 };
const char* to_string(Tristate t);

/// Definiteness, stability, and spectral-radius queries, all reduced to the
/// extremal endpoints. Works on any interval matrix; normalization is applied
/// internally and the diagonal shift is accounted for. Comparisons within
/// 2*tol + 4 ulps of the threshold return Undecided; endpoints coming from
/// 1x1 blocks are exact and always decide.
struct PropertyReport {
    Tristate positive_definite = Tristate::Undecided;
    Tristate positive_semidefinite = Tristate::Undecided;
    Tristate schur_stable = Tristate::Undecided;
    Tristate hurwitz_stable = Tristate::Undecided;
    Interval max_spectral_radius;
    double lambda1_hi = 0.0;  // extremes in original coordinates
    double lambdan_lo = 0.0;
};
PropertyReport property_checks(const SymTriInterval& m, double tol);

/// Map a report computed on the normalized matrix back to the original
/// coordinates: every endpoint drops by rec.shift and witnesses are carried
/// through the recorded transformations. If any entry was widened the status
/// degrades to Outer and a warning is attached. Throws on dimension mismatch.
EigBoundsReport denormalize_bounds(const EigBoundsReport& bounds, const NormalizationRecord& rec,
                                   const SymTriInterval& original);

}  // namespace trieig
