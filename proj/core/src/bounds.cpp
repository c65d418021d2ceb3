#include "trieig/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace trieig {

namespace {

double effective_tol(const SymTriInterval& m, double tol) {
    return tol > 0.0 ? tol : 1e-12 * m.scale();
}

void require_nonnegative(const SymTriInterval& m, const char* op) {
    if (!m.nonnegative())
        throw std::invalid_argument(std::string(op) + ": matrix must be in nonnegative form (normalize first)");
}

void require_off_upper_positive(const SymTriInterval& m, const char* op) {
    for (int i = 0; i + 1 < m.order(); ++i)
        if (!(m.off(i).hi > 0.0))
            throw std::invalid_argument(std::string(op) + ": off entry with zero upper bound (split blocks first)");
}

int pick_threads(int n, int threads) { return n >= 32 ? threads : 1; }

}  // namespace

const char* to_string(ExactnessStatus s) {
    switch (s) {
        case ExactnessStatus::Exact: return "Exact";
        case ExactnessStatus::InnerEstimate: return "InnerEstimate";
        case ExactnessStatus::Outer: return "Outer";
    }
    return "?";
}

const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::False: return "false";
        case Tristate::True: return "true";
        case Tristate::Undecided: return "undecided";
    }
    return "?";
}

SymTri EigBoundsReport::upper_witness(int k) const {
    const VertexSelection& sel = upper_sel[static_cast<std::size_t>(k - 1)];
    return denormalize_vertex(normalized.vertex(sel.diag_upper, sel.off_upper), domain, record);
}

SymTri EigBoundsReport::lower_witness(int k) const {
    const VertexSelection& sel = lower_sel[static_cast<std::size_t>(k - 1)];
    return denormalize_vertex(normalized.vertex(sel.diag_upper, sel.off_upper), domain, record);
}

DirectionalBounds upper_bounds_sign_invariant(const SymTriInterval& m, double tol, int threads) {
    require_nonnegative(m, "upper_bounds_sign_invariant");
    require_off_upper_positive(m, "upper_bounds_sign_invariant");
    const int n = m.order();
    const double eff_tol = effective_tol(m, tol);
    const SymTri mid = m.midpoint();

    std::vector<double> mid_eigs(static_cast<std::size_t>(n));
    detail::parallel_for(0, n, pick_threads(n, threads),
                         [&](int i) { mid_eigs[i] = kth_eigenvalue(mid, i + 1, eff_tol); });

    DirectionalBounds out;
    out.endpoints.resize(static_cast<std::size_t>(n));
    out.witnesses.resize(static_cast<std::size_t>(n));
    std::vector<char> ambiguous(static_cast<std::size_t>(n), 0);

    detail::parallel_for(0, n, pick_threads(n, threads), [&](int idx) {
        const int k = idx + 1;
        VertexSelection sel;
        sel.diag_upper.assign(static_cast<std::size_t>(n), true);
        sel.off_upper.assign(static_cast<std::size_t>(n - 1), false);
        if (n > 1) {
            const SignPattern pattern = eigenvector_signs(mid, mid_eigs[idx]);
            for (int i = 0; i + 1 < n; ++i) {
                const int prod = pattern.s[i] * pattern.s[i + 1];
                sel.off_upper[i] = prod > 0;
                if (pattern.s[i] == 0 || pattern.s[i + 1] == 0) ambiguous[idx] = 1;
            }
        }
        const SymTri vertex = m.vertex(sel.diag_upper, sel.off_upper);
        out.endpoints[idx] = kth_eigenvalue(vertex, k, eff_tol);
        out.witnesses[idx] = std::move(sel);
    });

    for (int idx = 0; idx < n; ++idx) {
        if (ambiguous[idx]) {
            out.ambiguous_sign = true;
            out.notes.push_back("zero eigenvector sign at index k=" + std::to_string(idx + 1) +
                                "; lower endpoint chosen, exactness not certified");
        }
    }
    return out;
}

DirectionalBounds lower_bounds_sign_invariant(const SymTriInterval& m, double tol, int threads) {
    require_nonnegative(m, "lower_bounds_sign_invariant");
    require_off_upper_positive(m, "lower_bounds_sign_invariant");
    const int n = m.order();
    const double eff_tol = effective_tol(m, tol);

    // Reflect the problem: min lambda_k over m equals -(max lambda_{n+1-k})
    // over the negated matrix, which is re-normalized before the upper-bound
    // rule applies. Off intervals come back unchanged under flip, so off
    // selection bits carry over; the reflected diagonal-upper choice maps to
    // the lower endpoints of m.
    auto [reflected, rec] = normalize(m.negated());
    DirectionalBounds up = upper_bounds_sign_invariant(reflected, eff_tol, threads);

    DirectionalBounds out;
    out.endpoints.resize(static_cast<std::size_t>(n));
    out.witnesses.resize(static_cast<std::size_t>(n));
    out.ambiguous_sign = up.ambiguous_sign;
    for (const std::string& note : up.notes) out.notes.push_back("reflected: " + note);

    for (int k = 1; k <= n; ++k) {
        const int kp = n + 1 - k;
        out.endpoints[k - 1] = rec.shift - up.endpoints[kp - 1];
        VertexSelection sel = up.witnesses[kp - 1];
        sel.diag_upper.assign(static_cast<std::size_t>(n), false);
        out.witnesses[k - 1] = std::move(sel);
    }
    return out;
}

ExtremalBounds extremal_bounds(const SymTriInterval& m, double tol) {
    require_nonnegative(m, "extremal_bounds");
    const int n = m.order();
    const double eff_tol = effective_tol(m, tol);

    const std::vector<bool> all_up(static_cast<std::size_t>(n), true);
    const std::vector<bool> all_lo(static_cast<std::size_t>(n), false);
    const std::vector<bool> off_up(static_cast<std::size_t>(n - 1), true);
    const std::vector<bool> off_lo(static_cast<std::size_t>(n - 1), false);

    ExtremalBounds out;
    out.lambda1_hi = kth_eigenvalue(m.vertex(all_up, off_up), 1, eff_tol);
    out.lambdan_lo = kth_eigenvalue(m.vertex(all_lo, off_up), n, eff_tol);
    out.lambda1_lo = kth_eigenvalue(m.vertex(all_lo, off_lo), 1, eff_tol);
    out.lambdan_hi = kth_eigenvalue(m.vertex(all_up, off_lo), n, eff_tol);
    return out;
}

int cardinality_of_upper_selection(const SignPattern& pattern) {
    if (pattern.has_zero())
        throw std::invalid_argument("cardinality_of_upper_selection: pattern has a zero entry");
    int agreements = 0;
    for (int i = 0; i + 1 < pattern.size(); ++i)
        if (pattern.s[i] * pattern.s[i + 1] > 0) ++agreements;
    return agreements;
}

namespace {

struct BandedValue {
    double value = 0.0;
    double band = 0.0;  // half-width of the uncertainty around value
};

Tristate tri_less(const BandedValue& v, double c) {
    if (v.value + v.band < c) return Tristate::True;
    if (v.value - v.band >= c) return Tristate::False;
    return Tristate::Undecided;
}

Tristate tri_greater(const BandedValue& v, double c) {
    if (v.value - v.band > c) return Tristate::True;
    if (v.value + v.band <= c) return Tristate::False;
    return Tristate::Undecided;
}

Tristate tri_geq(const BandedValue& v, double c) {
    if (v.value - v.band >= c) return Tristate::True;
    if (v.value + v.band < c) return Tristate::False;
    return Tristate::Undecided;
}

Tristate tri_and(Tristate a, Tristate b) {
    if (a == Tristate::False || b == Tristate::False) return Tristate::False;
    if (a == Tristate::True && b == Tristate::True) return Tristate::True;
    return Tristate::Undecided;
}

}  // namespace

PropertyReport property_checks(const SymTriInterval& m, double tol) {
    const double eff_tol = effective_tol(m, tol);
    auto [norm, rec] = normalize(m);

    // Per-block extremes; 1x1 blocks are exact copies of input endpoints and
    // carry no solver uncertainty.
    BandedValue l1_hi{-std::numeric_limits<double>::infinity(), 0.0};
    BandedValue ln_lo{std::numeric_limits<double>::infinity(), 0.0};
    const double solver_band = 2.0 * eff_tol + 4.0 * std::numeric_limits<double>::epsilon() * norm.scale();
    for (const Block& block : split_blocks(norm)) {
        BandedValue hi, lo;
        if (block.matrix.order() == 1) {
            hi = {block.matrix.diag(0).hi, 0.0};
            lo = {block.matrix.diag(0).lo, 0.0};
        } else {
            const ExtremalBounds eb = extremal_bounds(block.matrix, eff_tol);
            hi = {eb.lambda1_hi, solver_band};
            lo = {eb.lambdan_lo, solver_band};
        }
        if (hi.value > l1_hi.value) l1_hi = hi;
        if (lo.value < ln_lo.value) ln_lo = lo;
    }

    // Undo the diagonal shift (exact up to one rounding step, absorbed by the
    // band unless the value is exact and the shift is zero).
    if (rec.shift != 0.0) {
        const double shift_slack = std::numeric_limits<double>::epsilon() * std::fabs(rec.shift);
        l1_hi = {l1_hi.value - rec.shift, l1_hi.band + shift_slack};
        ln_lo = {ln_lo.value - rec.shift, ln_lo.band + shift_slack};
    }

    PropertyReport out;
    out.lambda1_hi = l1_hi.value;
    out.lambdan_lo = ln_lo.value;
    out.positive_definite = tri_greater(ln_lo, 0.0);
    out.positive_semidefinite = tri_geq(ln_lo, 0.0);
    out.schur_stable = tri_and(tri_greater(ln_lo, -1.0), tri_less(l1_hi, 1.0));
    out.hurwitz_stable = tri_less(l1_hi, 0.0);

    const double radius_lo = std::max(l1_hi.value - l1_hi.band, -ln_lo.value - ln_lo.band);
    const double radius_hi = std::max(l1_hi.value + l1_hi.band, -ln_lo.value + ln_lo.band);
    out.max_spectral_radius = Interval(ulp_down(radius_lo, 4), ulp_up(radius_hi, 4));
    return out;
}

EigBoundsReport denormalize_bounds(const EigBoundsReport& bounds, const NormalizationRecord& rec,
                                   const SymTriInterval& original) {
    const int n = bounds.order();
    if (rec.order() != n || original.order() != n)
        throw std::invalid_argument("denormalize_bounds: dimension mismatch");

    EigBoundsReport out = bounds;
    out.domain = original;
    out.record = rec;
    // The shift subtraction is exact up to one rounding step per endpoint.
    const int guard = rec.shift == 0.0 ? 0 : 1;
    for (Interval& iv : out.intervals)
        iv = Interval(ulp_down(iv.lo - rec.shift, guard), ulp_up(iv.hi - rec.shift, guard));
    for (double& v : out.raw_lo) v -= rec.shift;
    for (double& v : out.raw_hi) v -= rec.shift;
    if (rec.any_widened()) {
        out.status = ExactnessStatus::Outer;
        out.notes.push_back(
            "mixed-sign off-diagonal interval was widened during normalization; "
            "bounds describe the widened matrix set and witnesses with interior value 0 "
            "are members but not vertices");
    }
    return out;
}

}  // namespace trieig
