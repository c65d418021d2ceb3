#include <doctest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"
#include "trieig/invariance.hpp"
#include "trieig/oracle.hpp"
#include "trieig/pipeline.hpp"

using namespace trieig;
using testsupport::Rng;

namespace {

// All subsets of {2..n-1} with no two consecutive members, by direct filter.
std::uint64_t brute_force_admissible_count(int n) {
    const int lo = 2, hi = n - 1;
    const int m = std::max(0, hi - lo + 1);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        bool ok = true;
        for (int i = 0; i + 1 < m; ++i)
            if ((mask >> i & 1) && (mask >> (i + 1) & 1)) ok = false;
        count += ok ? 1 : 0;
    }
    return count;
}

}  // namespace

TEST_CASE("admissible index sets for n = 3") {
    const auto sets = admissible_index_sets(3);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].members == std::vector<int>{2});
}

TEST_CASE("admissible index sets for n = 5") {
    const auto sets = admissible_index_sets(5);
    REQUIRE(sets.size() == 4);
    std::set<std::vector<int>> got;
    for (const IndexSet& s : sets) got.insert(s.members);
    CHECK(got == std::set<std::vector<int>>{{2}, {3}, {4}, {2, 4}});
}

TEST_CASE("index-set counts satisfy the Fibonacci recurrence and match brute force") {
    for (int n = 3; n <= 20; ++n)
        CHECK(admissible_index_set_count(n) == brute_force_admissible_count(n));
    for (int n = 4; n <= 20; ++n)
        CHECK(admissible_index_set_count(n) ==
              admissible_index_set_count(n - 1) + admissible_index_set_count(n - 2));
    // Enumeration agrees with the closed count (which includes the empty set).
    for (int n = 3; n <= 12; ++n)
        CHECK(admissible_index_sets(n).size() + 1 == admissible_index_set_count(n));
}

TEST_CASE("index sets respect the structural constraints") {
    for (const IndexSet& s : admissible_index_sets(12)) {
        REQUIRE(!s.members.empty());
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            CHECK(s.members[i] >= 2);
            CHECK(s.members[i] <= 11);
            if (i > 0) CHECK(s.members[i] - s.members[i - 1] >= 2);
        }
    }
}

TEST_CASE("outer estimate collapses for a point matrix") {
    Rng rng(31);
    const SymTri t = testsupport::random_point_matrix(rng, 5);
    const OuterEstimate outer = outer_estimate(SymTriInterval::point(t), -1.0);
    const auto dense = testsupport::dense_eigenvalues(t);
    for (int k = 0; k < 5; ++k) {
        CHECK(outer.intervals[k].contains(dense[k]));
        CHECK(outer.intervals[k].width() < 1e-9);
    }
}

TEST_CASE("outer estimate encloses the published eigenvalue sets") {
    const OuterEstimate outer = outer_estimate(testsupport::example4x4_nonnegative(), -1.0);
    CHECK(outer.intervals[0].lo <= 12560.8377);
    CHECK(outer.intervals[0].hi >= 12720.2273);
    for (int k = 0; k < 4; ++k) {
        CHECK(outer.intervals[k].lo <= testsupport::kFinalLo[k]);
        CHECK(outer.intervals[k].hi >= testsupport::kFinalHi[k]);
    }
}

TEST_CASE("outer estimate contains every sampled member eigenvalue") {
    Rng rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const SymTriInterval m = testsupport::random_general_instance(rng, 5);
        const OuterEstimate outer = outer_estimate(m, -1.0);
        for (int s = 0; s < 200; ++s) {
            std::vector<double> d(5), e(4);
            for (int i = 0; i < 5; ++i) d[i] = rng.uniform(m.diag(i).lo, m.diag(i).hi);
            for (int i = 0; i < 4; ++i) e[i] = rng.uniform(m.off(i).lo, m.off(i).hi);
            for (double lam : testsupport::dense_eigenvalues(SymTri(std::move(d), std::move(e))))
                CHECK(outer.contains(lam));
        }
    }
}

TEST_CASE("reference instance is certified invariant by the separation fast path") {
    const InvarianceVerdict v = check_sign_invariance(testsupport::example4x4_nonnegative(), -1.0);
    CHECK(v.status == Invariance::Invariant);
    REQUIRE(v.certificate.has_value());
}

TEST_CASE("forced interior zero is detected as not sign invariant") {
    // Point matrix diag(0,0,0), couplings 1: the middle eigenvector is
    // (1, 0, -1) and both 1x1 split blocks share the eigenvalue 0.
    const SymTriInterval m({Interval(0.0), Interval(0.0), Interval(0.0)}, {Interval(1.0), Interval(1.0)});
    const InvarianceVerdict v = check_sign_invariance(m, -1.0);
    REQUIRE(v.status == Invariance::NotInvariant);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first.members == std::vector<int>{2});
    CHECK(std::fabs(v.witness->second) <= 1e-9);
}

TEST_CASE("zero coupling lower bound yields Unknown") {
    const SymTriInterval m({Interval(0, 1), Interval(0, 1)}, {Interval(0, 1)});
    const InvarianceVerdict v = check_sign_invariance(m, -1.0);
    CHECK(v.status == Invariance::Unknown);
    CHECK(!v.note.empty());
}

TEST_CASE("diagonally dominant instances are invariant and sign-stable under grid sampling") {
    Rng rng(33);
    for (int trial = 0; trial < 3; ++trial) {
        const int n = 4;
        const SymTriInterval m = testsupport::random_separated_instance(rng, n);
        REQUIRE(check_sign_invariance(m, -1.0).status == Invariance::Invariant);

        // Exhaustive sign sampling: eigenvector sign patterns stay constant
        // over a grid of the box.
        std::vector<std::vector<int>> reference(n);
        bool first = true;
        const int ppe = 4;  // 4^(2n-1) = 16384 grid matrices
        std::vector<int> idx(2 * n - 1, 0);
        for (;;) {
            std::vector<double> d(n), e(n - 1);
            for (int i = 0; i < n; ++i)
                d[i] = m.diag(i).lo + (m.diag(i).hi - m.diag(i).lo) * idx[i] / (ppe - 1);
            for (int i = 0; i + 1 < n; ++i)
                e[i] = m.off(i).lo + (m.off(i).hi - m.off(i).lo) * idx[n + i] / (ppe - 1);
            const SymTri t(std::move(d), std::move(e));
            for (int k = 1; k <= n; ++k) {
                const auto v = testsupport::dense_eigenvector(t, k);
                std::vector<int> pattern(n);
                const double align = v[0] >= 0 ? 1.0 : -1.0;
                for (int i = 0; i < n; ++i) pattern[i] = align * v[i] > 0 ? 1 : -1;
                if (first)
                    reference[k - 1] = pattern;
                else
                    CHECK(reference[k - 1] == pattern);
            }
            first = false;
            int pos = 0;
            while (pos < 2 * n - 1 && ++idx[pos] == ppe) idx[pos++] = 0;
            if (pos == 2 * n - 1) break;
        }
    }
}

TEST_CASE("membership test on the reference instance") {
    const SymTriInterval m = testsupport::example4x4_original();
    CHECK(membership_test(m, 5000.0, -1.0) == Membership::NotEigenvalue);
    CHECK(membership_test(m, 12600.0, -1.0) == Membership::IsEigenvalue);
    CHECK(membership_test(m, -1e6, -1.0) == Membership::NotEigenvalue);  // below the spectrum enclosure
}

TEST_CASE("membership test never contradicts itself inside the tolerance band") {
    Rng rng(34);
    for (int trial = 0; trial < 3; ++trial) {
        const SymTriInterval m = testsupport::random_nonnegative_instance(rng, 4);
        const double tol = 1e-12 * m.scale();
        AnalysisOptions opts;
        opts.refine = false;
        const EigBoundsReport rep = compute_bounds(m, opts);

        // Walk across every computed endpoint in steps of tol/2 and collect
        // the decisive answers on each side.
        for (int k = 1; k <= 4; ++k) {
            for (const double boundary : {rep.raw_lo[k - 1], rep.raw_hi[k - 1]}) {
                std::vector<std::pair<double, Membership>> decisive;
                for (int s = -20; s <= 20; ++s) {
                    const double x = boundary + s * tol / 2.0;
                    const Membership v = membership_test(m, x, tol);
                    if (v != Membership::Unknown) decisive.emplace_back(x, v);
                }
                for (const auto& [xi, vi] : decisive)
                    for (const auto& [xj, vj] : decisive)
                        if (vi == Membership::IsEigenvalue && vj == Membership::NotEigenvalue)
                            CHECK(std::fabs(xi - xj) > 2 * tol);
            }
        }
    }
}

TEST_CASE("interval Sturm scan is determinate away from the spectrum") {
    const SymTriInterval m = testsupport::example4x4_original();
    CHECK(detail::interval_sturm_count(m, 5000.0).determinate);
    CHECK(detail::interval_sturm_count(m, 5000.0).count_below == 2);
    CHECK(!detail::interval_sturm_count(m, 12600.0).determinate);  // inside an eigenvalue set
}

TEST_CASE("disjoint refinement upgrades the reference instance at eps = 1") {
    const SymTriInterval m = testsupport::example4x4_original();
    AnalysisOptions opts;
    opts.invariance = InvarianceMode::Off;  // force an uncertified inner estimate
    opts.refine = false;
    const EigBoundsReport inner = compute_bounds(m, opts);
    REQUIRE(inner.status == ExactnessStatus::InnerEstimate);

    const EigBoundsReport refined = disjoint_refinement(m, inner, 1.0, -1.0);
    CHECK(refined.status == ExactnessStatus::Exact);
}

TEST_CASE("disjoint refinement refuses overlapping inner intervals") {
    const SymTriInterval m({Interval(0, 10), Interval(0, 10)}, {Interval(1, 2)});
    AnalysisOptions opts;
    opts.invariance = InvarianceMode::Off;
    opts.refine = false;
    const EigBoundsReport inner = compute_bounds(m, opts);
    const EigBoundsReport refined = disjoint_refinement(m, inner, 1e-6, -1.0);
    CHECK(refined.status == ExactnessStatus::InnerEstimate);
    REQUIRE(!refined.notes.empty());
    CHECK(refined.notes.back().find("not disjoint") != std::string::npos);
}

TEST_CASE("disjoint refinement rejects a nonpositive eps") {
    const SymTriInterval m = testsupport::example4x4_original();
    const EigBoundsReport inner = compute_bounds(m);
    CHECK_THROWS_AS(disjoint_refinement(m, inner, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("refinement upgrades agree with the vertex oracle on separated instances") {
    Rng rng(35);
    for (int trial = 0; trial < 5; ++trial) {
        const SymTriInterval m = testsupport::random_separated_instance(rng, 4);
        AnalysisOptions opts;
        opts.invariance = InvarianceMode::Off;
        opts.refine = false;
        const EigBoundsReport inner = compute_bounds(m, opts);
        const EigBoundsReport refined = disjoint_refinement(m, inner, 1e-6 * m.scale(), -1.0);

        const auto oracle = vertex_enumerate_all(m, inner.tol);
        if (refined.status == ExactnessStatus::Exact) {
            for (int k = 1; k <= 4; ++k) {
                CHECK(refined.raw_hi[k - 1] == doctest::Approx(oracle[k - 1].hi).epsilon(0).margin(1e-9));
                CHECK(refined.raw_lo[k - 1] == doctest::Approx(oracle[k - 1].lo).epsilon(0).margin(1e-9));
            }
        }
        // Probe points that the oracle can certify as eigenvalues must block
        // the upgrade.
        for (int k = 2; k <= 3; ++k) {
            const double probe = inner.intervals[k - 1].hi + 1e-6 * m.scale();
            if (is_eigenvalue_bruteforce(m, probe, 1e-9 * m.scale()))
                CHECK(refined.status != ExactnessStatus::Exact);
        }
    }
}

TEST_CASE("full-path witness values are genuine common eigenvalues") {
    // A two-block-symmetric instance sharing spectra: diag(a, c, a) forces
    // the split at index 2 to produce identical 1x1 blocks.
    const SymTriInterval m({Interval(3.0), Interval(7.0), Interval(3.0)},
                           {Interval(0.5, 1.0), Interval(0.5, 1.0)});
    const InvarianceVerdict v = check_sign_invariance(m, -1.0);
    REQUIRE(v.status == Invariance::NotInvariant);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first.members == std::vector<int>{2});
    CHECK(v.witness->second == doctest::Approx(3.0).epsilon(0).margin(1e-9));
    // The witness value is an eigenvalue of some member.
    CHECK(is_eigenvalue_bruteforce(m, v.witness->second, 1e-8));
}
