#include "trieig/sym_tri.hpp"

#include <cmath>
#include <stdexcept>

namespace trieig {

namespace {

void check_shape(std::size_t n, std::size_t m, const char* what) {
    if (n == 0) throw std::invalid_argument(std::string(what) + ": order must be >= 1");
    if (m + 1 != n) throw std::invalid_argument(std::string(what) + ": off-diagonal length must be order-1");
}

}  // namespace

SymTri::SymTri(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    check_shape(diag_.size(), off_.size(), "SymTri");
    for (double v : diag_)
        if (!std::isfinite(v)) throw std::invalid_argument("SymTri: non-finite diagonal entry");
    for (double v : off_)
        if (!std::isfinite(v)) throw std::invalid_argument("SymTri: non-finite off-diagonal entry");
}

SymTri SymTri::diagonal(std::vector<double> diag) {
    std::vector<double> off(diag.empty() ? 0 : diag.size() - 1, 0.0);
    return SymTri(std::move(diag), std::move(off));
}

double SymTri::inf_norm() const {
    const int n = order();
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::fabs(diag_[i]);
        if (i > 0) row += std::fabs(off_[i - 1]);
        if (i + 1 < n) row += std::fabs(off_[i]);
        best = std::max(best, row);
    }
    return best;
}

double SymTri::scale() const { return std::max(1.0, inf_norm()); }

Interval SymTri::gershgorin() const {
    const int n = order();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(off_[i - 1]);
        if (i + 1 < n) r += std::fabs(off_[i]);
        lo = std::min(lo, diag_[i] - r);
        hi = std::max(hi, diag_[i] + r);
    }
    return Interval(lo, hi);
}

SymTriInterval::SymTriInterval(std::vector<Interval> diag, std::vector<Interval> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    check_shape(diag_.size(), off_.size(), "SymTriInterval");
    for (const Interval& v : diag_)
        if (!std::isfinite(v.lo) || !std::isfinite(v.hi))
            throw std::invalid_argument("SymTriInterval: non-finite diagonal entry");
    for (const Interval& v : off_)
        if (!std::isfinite(v.lo) || !std::isfinite(v.hi))
            throw std::invalid_argument("SymTriInterval: non-finite off-diagonal entry");
}

SymTriInterval SymTriInterval::point(const SymTri& m) {
    std::vector<Interval> d(m.diag().begin(), m.diag().end());
    std::vector<Interval> e(m.off().begin(), m.off().end());
    return SymTriInterval(std::move(d), std::move(e));
}

SymTri SymTriInterval::midpoint() const {
    std::vector<double> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = diag_[i].mid();
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = off_[i].mid();
    return SymTri(std::move(d), std::move(e));
}

SymTri SymTriInterval::radius() const {
    std::vector<double> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = diag_[i].rad();
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = off_[i].rad();
    return SymTri(std::move(d), std::move(e));
}

SymTri SymTriInterval::lower() const {
    std::vector<double> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = diag_[i].lo;
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = off_[i].lo;
    return SymTri(std::move(d), std::move(e));
}

SymTri SymTriInterval::upper() const {
    std::vector<double> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = diag_[i].hi;
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = off_[i].hi;
    return SymTri(std::move(d), std::move(e));
}

bool SymTriInterval::is_point() const {
    for (const Interval& v : diag_)
        if (!v.is_point()) return false;
    for (const Interval& v : off_)
        if (!v.is_point()) return false;
    return true;
}

SymTriInterval SymTriInterval::negated() const {
    std::vector<Interval> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = -diag_[i];
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = -off_[i];
    return SymTriInterval(std::move(d), std::move(e));
}

SymTriInterval SymTriInterval::principal_block(int first, int len) const {
    if (first < 0 || len < 1 || first + len > order())
        throw std::out_of_range("principal_block: invalid range");
    std::vector<Interval> d(diag_.begin() + first, diag_.begin() + first + len);
    std::vector<Interval> e;
    if (len > 1) e.assign(off_.begin() + first, off_.begin() + first + len - 1);
    return SymTriInterval(std::move(d), std::move(e));
}

SymTri SymTriInterval::vertex(const std::vector<bool>& diag_upper, const std::vector<bool>& off_upper) const {
    if (diag_upper.size() != diag_.size() || off_upper.size() != off_.size())
        throw std::invalid_argument("vertex: selection size mismatch");
    std::vector<double> d(diag_.size()), e(off_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) d[i] = diag_upper[i] ? diag_[i].hi : diag_[i].lo;
    for (std::size_t i = 0; i < off_.size(); ++i) e[i] = off_upper[i] ? off_[i].hi : off_[i].lo;
    return SymTri(std::move(d), std::move(e));
}

double SymTriInterval::scale() const {
    const int n = order();
    double best = 1.0;
    for (int i = 0; i < n; ++i) {
        double row = diag_[i].mag();
        if (i > 0) row += off_[i - 1].mag();
        if (i + 1 < n) row += off_[i].mag();
        best = std::max(best, row);
    }
    return best;
}

Interval SymTriInterval::gershgorin_disk(int i) const {
    const int n = order();
    double r = 0.0;
    if (i > 0) r += off_[i - 1].mag();
    if (i + 1 < n) r += off_[i].mag();
    return Interval(diag_[i].lo - r, diag_[i].hi + r);
}

Interval SymTriInterval::gershgorin() const {
    Interval out = gershgorin_disk(0);
    for (int i = 1; i < order(); ++i) out = hull(out, gershgorin_disk(i));
    return out;
}

bool SymTriInterval::off_lower_positive() const {
    for (const Interval& b : off_)
        if (!(b.lo > 0.0)) return false;
    return true;
}

bool SymTriInterval::nonnegative() const {
    for (const Interval& a : diag_)
        if (a.lo < 0.0) return false;
    for (const Interval& b : off_)
        if (b.lo < 0.0) return false;
    return true;
}

bool NormalizationRecord::any_widened() const {
    for (bool w : widened)
        if (w) return true;
    return false;
}

bool NormalizationRecord::identity() const {
    if (shift != 0.0) return false;
    for (bool f : flipped)
        if (f) return false;
    return !any_widened();
}

std::pair<SymTriInterval, NormalizationRecord> normalize(const SymTriInterval& m) {
    const int n = m.order();
    double alpha = 0.0;
    for (int i = 0; i < n; ++i) alpha = std::max(alpha, -m.diag(i).lo);

    std::vector<Interval> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[i] = m.diag(i) + alpha;

    NormalizationRecord rec;
    rec.shift = alpha;
    rec.flipped.assign(static_cast<std::size_t>(n - 1), false);
    rec.widened.assign(static_cast<std::size_t>(n - 1), false);

    std::vector<Interval> e(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) {
        const Interval& b = m.off(i);
        if (b.lo >= 0.0) {
            e[i] = b;
        } else if (b.hi <= 0.0) {
            e[i] = -b;
            rec.flipped[i] = true;
        } else {
            e[i] = Interval(0.0, std::max(-b.lo, b.hi));
            rec.widened[i] = true;
        }
    }
    return {SymTriInterval(std::move(d), std::move(e)), rec};
}

SymTri denormalize_vertex(const SymTri& v, const SymTriInterval& original, const NormalizationRecord& rec) {
    const int n = v.order();
    if (n != original.order() || n != rec.order())
        throw std::invalid_argument("denormalize_vertex: dimension mismatch");
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i) d[i] = v.diag(i) - rec.shift;
    for (int i = 0; i + 1 < n; ++i) {
        double val = v.off(i);
        if (rec.flipped[i]) {
            val = -val;
        } else if (rec.widened[i]) {
            // |val| is realizable with one of the two signs; prefer the
            // positive representative when both are members.
            if (!original.off(i).contains(val)) val = -val;
        }
        e[i] = val;
    }
    return SymTri(std::move(d), std::move(e));
}

std::vector<Block> split_blocks(const SymTriInterval& m) {
    const int n = m.order();
    std::vector<Block> blocks;
    int start = 0;
    for (int i = 0; i + 1 < n; ++i) {
        if (m.off(i).hi <= 0.0) {
            blocks.push_back({m.principal_block(start, i + 1 - start), start});
            start = i + 1;
        }
    }
    blocks.push_back({m.principal_block(start, n - start), start});
    return blocks;
}

}  // namespace trieig
