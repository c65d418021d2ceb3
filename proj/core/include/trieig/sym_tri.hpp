#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trieig/interval.hpp"

namespace trieig {

/// Real symmetric tridiagonal matrix of order n: diagonal a_1..a_n and
/// off-diagonal b_2..b_n. off(i) (0-based) couples rows i and i+1, i.e.
/// stores b_{i+2} in the 1-based notation.
class SymTri {
public:
    SymTri() = default;
    SymTri(std::vector<double> diag, std::vector<double> off);
    static SymTri diagonal(std::vector<double> diag);

    int order() const { return static_cast<int>(diag_.size()); }
    double diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    double off(int i) const { return off_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& diag() const { return diag_; }
    const std::vector<double>& off() const { return off_; }
    std::vector<double>& diag() { return diag_; }
    std::vector<double>& off() { return off_; }

    /// Maximum absolute row sum.
    double inf_norm() const;
    /// max(1, inf_norm()); the magnitude scale used for tolerances.
    double scale() const;
    /// Enclosure of the whole spectrum from the union of Gershgorin disks.
    Interval gershgorin() const;

    bool operator==(const SymTri& other) const = default;

private:
    std::vector<double> diag_;
    std::vector<double> off_;
};

/// Symmetric tridiagonal matrix with interval entries; the set of all SymTri
/// whose entries lie in the given intervals.
class SymTriInterval {
public:
    SymTriInterval() = default;
    SymTriInterval(std::vector<Interval> diag, std::vector<Interval> off);
    static SymTriInterval point(const SymTri& m);

    int order() const { return static_cast<int>(diag_.size()); }
    const Interval& diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    const Interval& off(int i) const { return off_[static_cast<std::size_t>(i)]; }
    const std::vector<Interval>& diag() const { return diag_; }
    const std::vector<Interval>& off() const { return off_; }

    SymTri midpoint() const;
    /// Entrywise radius matrix; nonnegative symmetric tridiagonal.
    SymTri radius() const;
    SymTri lower() const;
    SymTri upper() const;
    bool is_point() const;

    /// Entrywise negation, i.e. the set {-A : A in this}.
    SymTriInterval negated() const;

    /// Contiguous principal submatrix on 0-based rows [first, first+len).
    SymTriInterval principal_block(int first, int len) const;

    /// Member with every entry at the endpoint selected by the flags
    /// (true = upper). diag_upper has n entries, off_upper n-1.
    SymTri vertex(const std::vector<bool>& diag_upper, const std::vector<bool>& off_upper) const;

    /// max(1, largest inf_norm over members).
    double scale() const;
    /// Union over all members of the i-th Gershgorin disk.
    Interval gershgorin_disk(int i) const;
    /// Enclosure of every eigenvalue of every member.
    Interval gershgorin() const;

    bool off_lower_positive() const;  // b_lo > 0 for every off entry
    bool nonnegative() const;         // every interval endpoint >= 0

    bool operator==(const SymTriInterval& other) const = default;

private:
    std::vector<Interval> diag_;
    std::vector<Interval> off_;
};

/// How a matrix was carried to nonnegative form: a diagonal shift plus
/// per-entry off-diagonal sign flips, with mixed-sign entries widened to
/// [0, max(-lo, hi)].
struct NormalizationRecord {
    double shift = 0.0;
    std::vector<bool> flipped;
    std::vector<bool> widened;

    int order() const { return static_cast<int>(flipped.size()) + 1; }
    bool any_widened() const;
    bool identity() const;
};

/// Carry m to an entrywise-nonnegative interval matrix: the diagonal is
/// shifted by alpha = max(0, max_i(-a_lo_i)), which moves every eigenvalue up
/// by alpha; each off entry is kept if its lower bound is >= 0, reflected if
/// its upper bound is <= 0 (spectrum-preserving), and otherwise replaced by
/// [0, max(-lo, hi)] with the `widened` flag set.
std::pair<SymTriInterval, NormalizationRecord> normalize(const SymTriInterval& m);

/// Map a point matrix expressed in normalized coordinates back to the
/// original coordinates of the record. Widened entries keep their magnitude
/// and take the sign that makes the value a member of the original interval;
/// an interior value 0 stays 0.
SymTri denormalize_vertex(const SymTri& v, const SymTriInterval& original, const NormalizationRecord& rec);

/// Maximal diagonal blocks of a normalized matrix, split at every off entry
/// whose upper bound is zero. Offsets are 0-based row indices into m.
struct Block {
    SymTriInterval matrix;
    int offset = 0;
};
std::vector<Block> split_blocks(const SymTriInterval& m);

}  // namespace trieig
