#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trieig/bounds.hpp"
#include "trieig/sym_tri.hpp"

namespace trieig {

/// Candidate zero positions of an eigenvector, as 1-based row indices. Valid
/// sets live in {2, ..., n-1} and never contain two consecutive indices: an
/// eigenvector of a tridiagonal matrix with positive off-diagonal cannot
/// vanish at the ends or at two neighbouring rows.
struct IndexSet {
    std::vector<int> members;  // strictly increasing

    bool operator==(const IndexSet&) const = default;
};

/// Superset of the union of all eigenvalue sets: one interval per index,
/// centered at the midpoint eigenvalue with radius equal to the spectral
/// radius of the radius matrix.
struct OuterEstimate {
    std::vector<Interval> intervals;  // descending centers

    bool contains(double x) const;
};

enum class Invariance { Invariant, NotInvariant, Unknown };
const char* to_string(Invariance s);

struct InvarianceVerdict {
    Invariance status = Invariance::Unknown;
    /// For NotInvariant: the zero-index set and a value lying in an inner
    /// eigenvalue interval of every split submatrix.
    std::optional<std::pair<IndexSet, double>> witness;
    /// For Invariant: which separation argument certified it.
    std::optional<std::string> certificate;
    std::string note;
};

struct InvarianceOptions {
    double tol = -1.0;        // <= 0 selects 1e-12 * scale
    int threads = 0;          // 0 = hardware concurrency
    bool fastest_first = false;  // report the first witness found by any worker
                                 // rather than the lexicographically first
    bool full_path = true;            // run the index-set enumeration after the fast paths
    int full_path_max_order = 30;     // index-set enumeration refuses beyond this
    int outer_fast_path_max_order = 256;  // per-split outer-estimate pass cap
};

/// Visit every nonempty admissible index set of {2,...,n-1} (no two
/// consecutive members) in lexicographic order; stop early when the callback
/// returns false. Returns false iff the visit was stopped.
bool for_each_admissible_index_set(int n, const std::function<bool(const IndexSet&)>& visit);

/// All nonempty admissible index sets, lexicographic. Intended for small n.
std::vector<IndexSet> admissible_index_sets(int n);

/// Number of admissible index sets including the empty set; satisfies the
/// Fibonacci recurrence p(n) = p(n-1) + p(n-2).
std::uint64_t admissible_index_set_count(int n);

/// Outer enclosure per eigenvalue index: midpoint eigenvalue plus/minus the
/// spectral radius of the entrywise radius matrix, widened outward 4 ulps.
OuterEstimate outer_estimate(const SymTriInterval& m, double tol);

/// Decide eigenvector sign invariancy of a nonnegative interval matrix.
/// Requires every off lower bound positive, otherwise Unknown. Tries the
/// sufficient separation conditions first (Gershgorin disks, then per-split
/// outer estimates), then enumerates admissible zero-index sets and looks for
/// a value common to the inner eigenvalue intervals of every split submatrix.
/// Borderline overlaps inside the tolerance band yield Unknown.
InvarianceVerdict check_sign_invariance(const SymTriInterval& m, const InvarianceOptions& opts = {});
InvarianceVerdict check_sign_invariance(const SymTriInterval& m, double tol);

enum class Membership { IsEigenvalue, NotEigenvalue, Unknown };
const char* to_string(Membership m);

/// Is lambda an eigenvalue of at least one member of m? NotEigenvalue when
/// lambda lies outside the outer enclosure or when an interval-arithmetic
/// Sturm count over m - lambda I has determinate pivot signs for every
/// member (so no member is singular at lambda). IsEigenvalue when lambda lies
/// safely inside an inner-estimate interval. Unknown otherwise.
Membership membership_test(const SymTriInterval& m, double lambda, double tol);

/// Upgrade an inner-estimate report to Exact when the inner intervals are
/// pairwise disjoint and probing just outside each interior interval
/// (mu_lo - eps and mu_hi + eps for indices 2..n-1) certifies that no member
/// has an eigenvalue there; the extreme endpoints need no probe since they
/// are attained unconditionally. Otherwise the report is returned unchanged
/// with a diagnostic note.
EigBoundsReport disjoint_refinement(const SymTriInterval& m, const EigBoundsReport& inner, double eps,
                                    double tol);

namespace detail {

/// Interval-arithmetic Sturm pivot scan of m - lambda I. When `determinate`
/// every member of m has the same count of eigenvalues below lambda and no
/// member is singular at lambda.
struct IntervalSturmResult {
    bool determinate = false;
    int count_below = 0;
};
IntervalSturmResult interval_sturm_count(const SymTriInterval& m, double lambda);

}  // namespace detail

}  // namespace trieig
