#include "trieig/invariance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "parallel.hpp"

namespace trieig {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double effective_tol(const SymTriInterval& m, double tol) {
    return tol > 0.0 ? tol : 1e-12 * m.scale();
}

/// Sort intervals and merge overlapping ones into disjoint components.
std::vector<Interval> merge_components(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

/// Intersection of two unions of disjoint sorted intervals.
std::vector<Interval> intersect_unions(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back(Interval(lo, hi));
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

bool unions_disjoint(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].intersects(b[j])) return false;
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return true;
}

}  // namespace

const char* to_string(Invariance s) {
    switch (s) {
        case Invariance::Invariant: return "Invariant";
        case Invariance::NotInvariant: return "NotInvariant";
        case Invariance::Unknown: return "Unknown";
    }
    return "?";
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::IsEigenvalue: return "IsEigenvalue";
        case Membership::NotEigenvalue: return "NotEigenvalue";
        case Membership::Unknown: return "Unknown";
    }
    return "?";
}

bool OuterEstimate::contains(double x) const {
    for (const Interval& iv : intervals)
        if (iv.contains(x)) return true;
    return false;
}

bool for_each_admissible_index_set(int n, const std::function<bool(const IndexSet&)>& visit) {
    IndexSet cur;
    // Depth-first over members in {2..n-1}, skipping adjacent indices; this
    // yields lexicographic order on the sorted member lists.
    std::function<bool(int)> rec = [&](int start) {
        for (int i = start; i <= n - 1; ++i) {
            cur.members.push_back(i);
            if (!visit(cur)) return false;
            if (!rec(i + 2)) return false;
            cur.members.pop_back();
        }
        return true;
    };
    return rec(2);
}

std::vector<IndexSet> admissible_index_sets(int n) {
    std::vector<IndexSet> out;
    for_each_admissible_index_set(n, [&](const IndexSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::uint64_t admissible_index_set_count(int n) {
    const int positions = std::max(0, n - 2);
    // Subsets of a path of `positions` vertices with no two adjacent,
    // including the empty set.
    std::uint64_t prev = 1, cur = 1;  // counts for 0 and then growing position counts
    for (int i = 1; i <= positions; ++i) {
        const std::uint64_t next = cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

OuterEstimate outer_estimate(const SymTriInterval& m, double tol) {
    const double eff_tol = effective_tol(m, tol);
    const int n = m.order();
    const SymTri mid = m.midpoint();
    const SymTri rad = m.radius();
    // The radius matrix is entrywise nonnegative, so its largest eigenvalue
    // is its spectral radius and dominates the 2-norm of any entrywise
    // perturbation within the box.
    const double rho = (n == 1) ? rad.diag(0) : kth_eigenvalue(rad, 1, eff_tol);

    OuterEstimate out;
    out.intervals.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double center = (n == 1) ? mid.diag(0) : kth_eigenvalue(mid, k, eff_tol);
        // Both the center and rho carry up to eff_tol of bisection error.
        out.intervals[k - 1] = widen_outward(Interval(center - rho, center + rho), 2.0 * eff_tol, 4);
    }
    return out;
}

namespace {

struct SegmentInner {
    std::vector<Interval> raw;  // per k, descending
    double uncertainty = 0.0;
};

// Inner eigenvalue intervals of a contiguous principal submatrix, unwidened.
SegmentInner segment_inner_estimate(const SymTriInterval& seg, double tol) {
    SegmentInner out;
    const int len = seg.order();
    if (len == 1) {
        out.raw = {seg.diag(0)};
        out.uncertainty = 0.0;
        return out;
    }
    const DirectionalBounds up = upper_bounds_sign_invariant(seg, tol, 1);
    const DirectionalBounds lo = lower_bounds_sign_invariant(seg, tol, 1);
    out.raw.resize(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k)
        out.raw[k] = Interval(std::min(lo.endpoints[k], up.endpoints[k]), std::max(lo.endpoints[k], up.endpoints[k]));
    out.uncertainty = 2.0 * tol;
    return out;
}

std::vector<Interval> shifted_components(const SegmentInner& seg, double shift) {
    std::vector<Interval> v;
    v.reserve(seg.raw.size());
    for (const Interval& iv : seg.raw) {
        const double lo = iv.lo + shift;
        const double hi = iv.hi - shift;
        if (lo <= hi) v.push_back(Interval(lo, hi));
    }
    return merge_components(std::move(v));
}

// Segments of rows [0, n) split at the 1-based zero indices of I.
std::vector<std::pair<int, int>> split_segments(int n, const IndexSet& I) {
    std::vector<std::pair<int, int>> segs;
    int start = 0;
    for (int idx : I.members) {
        segs.emplace_back(start, idx - 1 - start);  // rows before the zero row
        start = idx;                                 // 0-based row after the zero row
    }
    segs.emplace_back(start, n - start);
    return segs;
}

}  // namespace

InvarianceVerdict check_sign_invariance(const SymTriInterval& m, double tol) {
    InvarianceOptions opts;
    opts.tol = tol;
    return check_sign_invariance(m, opts);
}

InvarianceVerdict check_sign_invariance(const SymTriInterval& input, const InvarianceOptions& opts) {
    // Sign invariancy is unaffected by the diagonal shift and by off sign
    // flips (eigenvector entries flip in fixed positions), so it is safe to
    // normalize here; a widened entry surfaces as a zero off lower bound.
    const SymTriInterval m = input.nonnegative() ? input : normalize(input).first;
    const int n = m.order();
    const double eff_tol = effective_tol(m, opts.tol);

    InvarianceVerdict verdict;
    if (n <= 2) {
        if (n == 1 || m.off_lower_positive()) {
            verdict.status = Invariance::Invariant;
            verdict.certificate = "no admissible interior zero index";
        } else {
            verdict.status = Invariance::Unknown;
            verdict.note = "off-diagonal lower bound not positive";
        }
        return verdict;
    }
    if (!m.off_lower_positive()) {
        verdict.status = Invariance::Unknown;
        verdict.note = "off-diagonal lower bound not positive; zero-entry analysis does not apply";
        return verdict;
    }

    // Sufficient condition, cheap form: if Gershgorin disks at index distance
    // >= 2 never intersect, then for every split the left/right submatrix
    // enclosures are disjoint.
    {
        std::vector<Interval> disks(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) disks[i] = m.gershgorin_disk(i);
        bool separated = true;
        for (int j = 0; j < n && separated; ++j)
            for (int l = j + 2; l < n; ++l)
                if (disks[j].intersects(disks[l])) {
                    separated = false;
                    break;
                }
        if (separated) {
            verdict.status = Invariance::Invariant;
            verdict.certificate = "gershgorin disks disjoint at every index distance >= 2";
            return verdict;
        }
    }

    // Sufficient condition, Weyl form: per-split outer estimates with
    // disjoint unions. Cost grows cubically, hence the order cap.
    if (n <= opts.outer_fast_path_max_order) {
        std::vector<char> split_ok(static_cast<std::size_t>(n - 2), 0);
        std::atomic<bool> any_fail{false};
        detail::parallel_for(0, n - 2, opts.threads, [&](int s) {
            if (any_fail.load(std::memory_order_relaxed)) return;
            const int zero_row = s + 1;  // 0-based row that would vanish
            const OuterEstimate left = outer_estimate(m.principal_block(0, zero_row), eff_tol);
            const OuterEstimate right =
                outer_estimate(m.principal_block(zero_row + 1, n - zero_row - 1), eff_tol);
            if (unions_disjoint(merge_components(left.intervals), merge_components(right.intervals)))
                split_ok[s] = 1;
            else
                any_fail.store(true, std::memory_order_relaxed);
        });
        bool all_ok = true;
        for (char ok : split_ok) all_ok = all_ok && ok;
        if (all_ok) {
            verdict.status = Invariance::Invariant;
            verdict.certificate = "outer-estimate unions disjoint at every interior split";
            return verdict;
        }
    }

    if (!opts.full_path) {
        verdict.status = Invariance::Unknown;
        verdict.note = "separation fast paths inconclusive (index-set enumeration disabled)";
        return verdict;
    }
    if (n > opts.full_path_max_order) {
        verdict.status = Invariance::Unknown;
        verdict.note = "order exceeds the index-set enumeration cap (" +
                       std::to_string(opts.full_path_max_order) + ")";
        return verdict;
    }

    // Full enumeration of admissible zero-index sets. Inner estimates of
    // contiguous submatrices are precomputed once per (first, len).
    std::vector<std::vector<SegmentInner>> inner(static_cast<std::size_t>(n));
    {
        std::vector<std::pair<int, int>> jobs;
        for (int first = 0; first < n; ++first)
            for (int len = 1; first + len <= n; ++len) jobs.emplace_back(first, len);
        for (int first = 0; first < n; ++first)
            inner[first].resize(static_cast<std::size_t>(n - first));
        detail::parallel_for(0, static_cast<int>(jobs.size()), opts.threads, [&](int j) {
            const auto [first, len] = jobs[static_cast<std::size_t>(j)];
            inner[first][len - 1] = segment_inner_estimate(m.principal_block(first, len), eff_tol);
        });
    }

    // Evaluate one index set: does some real value lie in an inner interval
    // of every split segment? The core test shrinks each interval by its
    // uncertainty (solid witness); the loose test inflates instead
    // (borderline overlap -> Unknown).
    struct SetOutcome {
        bool core = false;
        bool loose = false;
        double value = 0.0;
    };
    auto evaluate = [&](const IndexSet& I) {
        SetOutcome r;
        std::vector<Interval> core, loose;
        bool first_seg = true;
        for (const auto& [first, len] : split_segments(n, I)) {
            const SegmentInner& seg = inner[first][len - 1];
            const std::vector<Interval> seg_core = shifted_components(seg, +seg.uncertainty);
            const std::vector<Interval> seg_loose = shifted_components(seg, -seg.uncertainty);
            if (first_seg) {
                core = seg_core;
                loose = seg_loose;
                first_seg = false;
            } else {
                core = intersect_unions(core, seg_core);
                loose = intersect_unions(loose, seg_loose);
            }
            if (loose.empty()) return r;
        }
        r.loose = !loose.empty();
        if (!core.empty()) {
            r.core = true;
            r.value = core.front().mid();
        }
        return r;
    };

    std::vector<IndexSet> sets = admissible_index_sets(n);
    std::atomic<bool> stop{false};
    std::vector<char> core_hit(sets.size(), 0), loose_hit(sets.size(), 0);
    std::vector<double> values(sets.size(), 0.0);
    detail::parallel_for(0, static_cast<int>(sets.size()), opts.threads, [&](int i) {
        if (opts.fastest_first && stop.load(std::memory_order_relaxed)) return;
        const SetOutcome r = evaluate(sets[static_cast<std::size_t>(i)]);
        core_hit[static_cast<std::size_t>(i)] = r.core;
        loose_hit[static_cast<std::size_t>(i)] = r.loose;
        values[static_cast<std::size_t>(i)] = r.value;
        if (r.core && opts.fastest_first) stop.store(true, std::memory_order_relaxed);
    });

    bool ambiguous = false;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (core_hit[i]) {
            verdict.status = Invariance::NotInvariant;
            verdict.witness = {sets[i], values[i]};
            return verdict;
        }
        if (loose_hit[i]) ambiguous = true;
    }
    if (ambiguous) {
        verdict.status = Invariance::Unknown;
        verdict.note = "submatrix spectra overlap within the tolerance band";
        return verdict;
    }
    verdict.status = Invariance::Invariant;
    verdict.certificate = "no common eigenvalue across any admissible zero-index split";
    return verdict;
}

detail::IntervalSturmResult detail::interval_sturm_count(const SymTriInterval& m, double lambda) {
    const int n = m.order();
    IntervalSturmResult out;
    Interval q = isub(m.diag(0), Interval(lambda));
    for (int j = 0;; ++j) {
        if (q.contains(0.0)) return out;  // pivot sign not determinate
        if (q.hi < 0.0) ++out.count_below;
        if (j + 1 >= n) break;
        q = isub(isub(m.diag(j + 1), Interval(lambda)), idiv(isquare(m.off(j)), q));
    }
    out.determinate = true;
    return out;
}

namespace {

/// Shared state for repeated membership queries on one matrix.
struct MembershipContext {
    SymTriInterval matrix;      // original coordinates
    Interval gersh;             // spectrum enclosure over all members
    OuterEstimate outer;        // in original coordinates
    // Per-block certainly-attained inner regions, original coordinates.
    std::vector<Interval> inner_core;

    explicit MembershipContext(const SymTriInterval& m, double tol) : matrix(m) {
        const double eff_tol = tol > 0.0 ? tol : 1e-12 * m.scale();
        gersh = m.gershgorin();
        outer = outer_estimate(m, eff_tol);

        // The normalized form has the same member spectra: the diagonal shift
        // moves them uniformly and each off sign flip maps members to
        // spectrum-equal members (both directions), including widened
        // entries.
        auto [norm, rec] = normalize(m);
        for (const Block& block : split_blocks(norm)) {
            const SegmentInner inner = segment_inner_estimate(block.matrix, eff_tol);
            const double margin = inner.uncertainty == 0.0 ? 0.0 : 2.0 * inner.uncertainty;
            for (const Interval& iv : inner.raw) {
                const double lo = iv.lo - rec.shift + margin;
                const double hi = iv.hi - rec.shift - margin;
                if (lo <= hi) inner_core.push_back(Interval(lo, hi));
            }
        }
    }

    Membership query(double lambda) const {
        if (lambda < gersh.lo || lambda > gersh.hi) return Membership::NotEigenvalue;
        for (const Interval& iv : inner_core)
            if (iv.contains(lambda)) return Membership::IsEigenvalue;
        if (!outer.contains(lambda)) return Membership::NotEigenvalue;
        if (detail::interval_sturm_count(matrix, lambda).determinate) return Membership::NotEigenvalue;
        return Membership::Unknown;
    }
};

}  // namespace

Membership membership_test(const SymTriInterval& m, double lambda, double tol) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("membership_test: non-finite query");
    return MembershipContext(m, tol).query(lambda);
}

EigBoundsReport disjoint_refinement(const SymTriInterval& m, const EigBoundsReport& inner, double eps,
                                    double tol) {
    if (!(eps > 0.0)) throw std::invalid_argument("disjoint_refinement: eps must be positive");
    if (m.order() != inner.order()) throw std::invalid_argument("disjoint_refinement: dimension mismatch");

    EigBoundsReport out = inner;
    if (inner.status == ExactnessStatus::Exact) return out;
    if (inner.status == ExactnessStatus::Outer) {
        out.notes.push_back("refinement skipped: widened normalization");
        return out;
    }

    const int n = inner.order();
    for (int k = 0; k + 1 < n; ++k) {
        if (!(inner.intervals[k].lo > inner.intervals[k + 1].hi)) {
            out.notes.push_back("refinement skipped: inner intervals " + std::to_string(k + 1) + " and " +
                                std::to_string(k + 2) + " are not disjoint");
            return out;
        }
    }

    const MembershipContext ctx(m, tol);
    for (int k = 2; k <= n - 1; ++k) {
        for (const double probe :
             {inner.intervals[k - 1].lo - eps, inner.intervals[k - 1].hi + eps}) {
            const Membership verdict = ctx.query(probe);
            if (verdict != Membership::NotEigenvalue) {
                out.notes.push_back("refinement inconclusive: probe at " + std::to_string(probe) +
                                    " near interval " + std::to_string(k) + " returned " +
                                    std::string(to_string(verdict)));
                return out;
            }
        }
    }

    out.status = ExactnessStatus::Exact;
    out.notes.push_back("inner intervals are pairwise disjoint and all probes outside them are "
                        "certified non-eigenvalues; endpoints are exact");
    return out;
}

}  // namespace trieig
