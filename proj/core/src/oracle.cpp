#include "trieig/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "trieig/sturm.hpp"

namespace trieig {

namespace {

int free_endpoint_bits(const SymTriInterval& m) { return 2 * m.order() - 1; }

void require_enum_cap(const SymTriInterval& m, const char* op) {
    if (free_endpoint_bits(m) > kVertexEnumBits)
        throw std::invalid_argument(std::string(op) + ": vertex enumeration cap exceeded (2n-1 > " +
                                    std::to_string(kVertexEnumBits) + ")");
}

SymTri vertex_from_bits(const SymTriInterval& m, std::uint64_t bits) {
    const int n = m.order();
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i) d[i] = (bits >> i) & 1 ? m.diag(i).hi : m.diag(i).lo;
    for (int i = 0; i + 1 < n; ++i) e[i] = (bits >> (n + i)) & 1 ? m.off(i).hi : m.off(i).lo;
    return SymTri(std::move(d), std::move(e));
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double pick_in(const Interval& iv, double t) { return iv.lo + t * (iv.hi - iv.lo); }

/// Sign of det(A - lambda I) via the pivot recurrence. Tiny pivots are
/// substituted the same way the Sturm count does it, so the sign stays
/// reliable whenever the determinant itself is away from zero.
int det_sign_at(const SymTri& T, double lambda) {
    const int n = T.order();
    const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * T.scale();
    int sign = 1;
    double q = T.diag(0) - lambda;
    for (int j = 0;; ++j) {
        if (std::fabs(q) <= tiny) q = -tiny;
        if (q < 0.0) sign = -sign;
        if (j + 1 >= n) break;
        q = (T.diag(j + 1) - lambda) - (T.off(j) * T.off(j)) / q;
    }
    return sign;
}

}  // namespace

OracleRange vertex_enumerate(const SymTriInterval& m, int k, double tol) {
    require_enum_cap(m, "vertex_enumerate");
    const int n = m.order();
    if (k < 1 || k > n) throw std::out_of_range("vertex_enumerate: k out of range");
    const double eff_tol = tol > 0.0 ? tol : 1e-12 * m.scale();

    OracleRange out;
    out.k = k;
    out.lo = std::numeric_limits<double>::infinity();
    out.hi = -out.lo;
    const std::uint64_t total = 1ull << free_endpoint_bits(m);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        SymTri v = vertex_from_bits(m, bits);
        const double lam = kth_eigenvalue(v, k, eff_tol);
        if (lam < out.lo) {
            out.lo = lam;
            out.argmin = v;
        }
        if (lam > out.hi) {
            out.hi = lam;
            out.argmax = std::move(v);
        }
    }
    return out;
}

std::vector<OracleRange> vertex_enumerate_all(const SymTriInterval& m, double tol) {
    require_enum_cap(m, "vertex_enumerate_all");
    const int n = m.order();
    const double eff_tol = tol > 0.0 ? tol : 1e-12 * m.scale();

    std::vector<OracleRange> out(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        out[k - 1].k = k;
        out[k - 1].lo = std::numeric_limits<double>::infinity();
        out[k - 1].hi = -out[k - 1].lo;
    }
    const std::uint64_t total = 1ull << free_endpoint_bits(m);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        const SymTri v = vertex_from_bits(m, bits);
        const std::vector<double> eigs = all_eigenvalues(v, eff_tol);
        for (int k = 0; k < n; ++k) {
            if (eigs[k] < out[k].lo) {
                out[k].lo = eigs[k];
                out[k].argmin = v;
            }
            if (eigs[k] > out[k].hi) {
                out[k].hi = eigs[k];
                out[k].argmax = v;
            }
        }
    }
    return out;
}

OracleRange grid_sample(const SymTriInterval& m, int k, const GridOptions& opts, double tol) {
    const int n = m.order();
    if (k < 1 || k > n) throw std::out_of_range("grid_sample: k out of range");
    const double eff_tol = tol > 0.0 ? tol : 1e-12 * m.scale();
    const int entries = 2 * n - 1;

    OracleRange out;
    out.k = k;
    out.lo = std::numeric_limits<double>::infinity();
    out.hi = -out.lo;

    auto consider = [&](SymTri v) {
        const double lam = kth_eigenvalue(v, k, eff_tol);
        if (lam < out.lo) {
            out.lo = lam;
            out.argmin = v;
        }
        if (lam > out.hi) {
            out.hi = lam;
            out.argmax = std::move(v);
        }
    };

    if (opts.random_mode) {
        out.seed = opts.seed;
        for (std::uint64_t s = 0; s < opts.samples; ++s) {
            // Per-sample generator state derived from (seed, s): the result
            // does not depend on evaluation order.
            std::uint64_t state = opts.seed ^ (0xA24BAED4963EE407ull * (s + 1));
            std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
            for (int i = 0; i < n; ++i) d[i] = pick_in(m.diag(i), unit_uniform(state));
            for (int i = 0; i + 1 < n; ++i) e[i] = pick_in(m.off(i), unit_uniform(state));
            consider(SymTri(std::move(d), std::move(e)));
        }
        return out;
    }

    const int ppe = opts.points_per_entry;
    if (ppe < 1) throw std::invalid_argument("grid_sample: points_per_entry must be >= 1");
    if (std::pow(static_cast<double>(ppe), entries) > kGridBudget)
        throw std::invalid_argument("grid_sample: full grid exceeds the point budget; use random mode");

    std::vector<int> idx(static_cast<std::size_t>(entries), 0);
    for (;;) {
        std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n; ++i)
            d[i] = ppe == 1 ? m.diag(i).mid() : pick_in(m.diag(i), idx[i] / double(ppe - 1));
        for (int i = 0; i + 1 < n; ++i)
            e[i] = ppe == 1 ? m.off(i).mid() : pick_in(m.off(i), idx[n + i] / double(ppe - 1));
        consider(SymTri(std::move(d), std::move(e)));

        int pos = 0;
        while (pos < entries && ++idx[pos] == ppe) idx[pos++] = 0;
        if (pos == entries) break;
    }
    return out;
}

bool is_eigenvalue_bruteforce(const SymTriInterval& m, double lambda, double tol) {
    require_enum_cap(m, "is_eigenvalue_bruteforce");
    const double eff_tol = tol > 0.0 ? tol : 1e-12 * m.scale();

    int positive = 0, negative = 0;
    const std::uint64_t total = 1ull << free_endpoint_bits(m);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        const SymTri v = vertex_from_bits(m, bits);
        const std::vector<double> eigs = all_eigenvalues(v, eff_tol);
        for (double e : eigs)
            if (std::fabs(e - lambda) <= eff_tol) return true;
        (det_sign_at(v, lambda) > 0 ? positive : negative)++;
    }
    // The box is convex: opposite determinant signs at two members force a
    // singular matrix on the segment between them.
    return positive > 0 && negative > 0;
}

}  // namespace trieig
