#include "trieig/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trieig {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

double pivot_floor(const SymTri& T) {
    double max_b2 = 1.0;
    for (double b : T.off()) max_b2 = std::max(max_b2, b * b);
    return kSafeMin * max_b2;
}

}  // namespace

int eigenvalue_count_below(const SymTri& T, double lambda) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("eigenvalue_count_below: non-finite query");
    const int n = T.order();
    const double pivmin = pivot_floor(T);
    const std::vector<double>& a = T.diag();
    const std::vector<double>& b = T.off();

    int count = 0;
    double q = a[0] - lambda;
    if (std::fabs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (int j = 1; j < n; ++j) {
        q = (a[j] - lambda) - (b[j - 1] * b[j - 1]) / q;
        if (std::fabs(q) <= pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

SturmEvaluation sturm_count(const SymTri& T, double lambda) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("sturm_count: non-finite query");
    const int n = T.order();
    const double pivmin = pivot_floor(T);
    const std::vector<double>& a = T.diag();
    const std::vector<double>& b = T.off();

    SturmEvaluation out;
    out.signs.resize(static_cast<std::size_t>(n) + 1);
    out.signs[0] = +1;

    // sign(chi_j) = (-1)^j * prod_{i<=j} sign(q_i), since chi_j(x) is the
    // monic polynomial (-1)^j det(A_j - x I) and the pivots factor that
    // determinant.
    int det_sign = +1;
    double q = a[0] - lambda;
    if (std::fabs(q) <= pivmin) q = -pivmin;
    for (int j = 0; j < n; ++j) {
        if (j > 0) {
            q = (a[j] - lambda) - (b[j - 1] * b[j - 1]) / q;
            if (std::fabs(q) <= pivmin) q = -pivmin;
        }
        if (q < 0.0) {
            det_sign = -det_sign;
            ++out.count_below;
        }
        out.signs[j + 1] = static_cast<std::int8_t>(((j + 1) % 2 == 0) ? det_sign : -det_sign);
    }
    return out;
}

double default_tolerance(const SymTri& T) { return 1e-12 * T.scale(); }

double kth_eigenvalue(const SymTri& T, int k, double tol) {
    const int n = T.order();
    if (k < 1 || k > n) throw std::out_of_range("kth_eigenvalue: k out of range");
    if (!(tol > 0.0)) throw std::invalid_argument("kth_eigenvalue: tol must be positive");
    if (n == 1) return T.diag(0);

    const Interval g = T.gershgorin();
    const double pad = 2.0 * kEps * std::max({std::fabs(g.lo), std::fabs(g.hi), 1.0}) + tol;
    double lo = g.lo - pad;
    double hi = g.hi + pad;

    // k-th largest == m-th smallest.
    const int m = n - k + 1;
    for (int iter = 0; iter < 200 && (hi - lo) > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        if (eigenvalue_count_below(T, mid) >= m)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> all_eigenvalues(const SymTri& T, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("all_eigenvalues: tol must be positive");
    const int n = T.order();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) out[k - 1] = kth_eigenvalue(T, k, tol);
    return out;
}

SignPattern eigenvector_signs(const SymTri& T, double lambda_k) {
    const int n = T.order();
    for (double b : T.off())
        if (!(b > 0.0)) throw std::invalid_argument("eigenvector_signs: requires b > 0 entrywise");

    const double pivmin = pivot_floor(T);
    const double zero_tol = static_cast<double>(n) * kEps * T.scale();
    const std::vector<double>& a = T.diag();
    const std::vector<double>& b = T.off();

    SignPattern p;
    p.s.resize(static_cast<std::size_t>(n));
    // Entry j (1-based) carries the sign of chi_{j-1}(lambda_k); chi_0 == 1.
    p.s[0] = +1;

    int det_sign = +1;
    double q = a[0] - lambda_k;
    for (int j = 1; j < n; ++j) {
        const bool numerically_zero = std::fabs(q) <= zero_tol;
        double q_safe = q;
        if (std::fabs(q_safe) <= pivmin) q_safe = -pivmin;
        if (q_safe < 0.0) det_sign = -det_sign;
        // chi_j = (-1)^j * det(A_j - lambda I)
        const std::int8_t sign_chi = static_cast<std::int8_t>((j % 2 == 0) ? det_sign : -det_sign);
        p.s[j] = numerically_zero ? std::int8_t{0} : sign_chi;
        q = (a[j] - lambda_k) - (b[j - 1] * b[j - 1]) / q_safe;
    }
    return p;
}

namespace {

// Deterministic 64-bit mix for reproducible start vectors.
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

// Solve (T - sigma I) x = rhs in place via LU with partial pivoting.
// Row swaps introduce a second superdiagonal (standard tridiagonal LU).
bool solve_shifted(const SymTri& T, double sigma, std::vector<double>& x) {
    const int n = T.order();
    std::vector<double> dl(n > 1 ? n - 1 : 0), d(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0);
    for (int i = 0; i < n; ++i) d[i] = T.diag(i) - sigma;
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = T.off(i);

    const double tiny = kEps * T.scale();
    std::vector<int> piv(n, 0);
    for (int i = 0; i + 1 < n; ++i) {
        if (std::fabs(d[i]) >= std::fabs(dl[i])) {
            if (std::fabs(d[i]) <= tiny) d[i] = std::copysign(tiny, d[i] == 0.0 ? 1.0 : d[i]);
            const double mult = dl[i] / d[i];
            dl[i] = mult;
            d[i + 1] -= mult * du[i];
            if (i + 2 < n) du2[i] = 0.0;
        } else {
            piv[i] = 1;
            const double mult = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = mult;
            const double tmp = d[i + 1];
            d[i + 1] = du[i] - mult * tmp;
            du[i] = tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -mult * du[i + 1];
            }
        }
    }
    if (std::fabs(d[n - 1]) <= tiny)
        d[n - 1] = std::copysign(tiny, d[n - 1] == 0.0 ? 1.0 : d[n - 1]);

    // Forward substitution with the recorded row swaps.
    for (int i = 0; i + 1 < n; ++i) {
        if (piv[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= dl[i] * x[i];
    }
    // Back substitution.
    x[n - 1] /= d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i) x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvector(const SymTri& T, double lambda_k) {
    const int n = T.order();
    if (n == 1) return {1.0};

    const double scale = T.scale();
    const double residual_cap = 1e-8 * T.inf_norm() + 1e-300;
    std::uint64_t rng = 0x1B873593ull ^ (static_cast<std::uint64_t>(n) << 32);

    for (int restart = 0; restart <= 5; ++restart) {
        // Perturb the shift on each restart to step off an exactly singular
        // factorization.
        const double sigma = lambda_k + static_cast<double>(restart) * 16.0 * kEps * scale;
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& v : x) v = unit_uniform(rng) - 0.5;
        double nrm = norm2(x);
        for (double& v : x) v /= nrm;

        for (int iter = 0; iter < 8; ++iter) {
            if (!solve_shifted(T, sigma, x)) break;
            nrm = norm2(x);
            if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
            for (double& v : x) v /= nrm;

            double resid = 0.0;
            for (int i = 0; i < n; ++i) {
                double r = (T.diag(i) - lambda_k) * x[i];
                if (i > 0) r += T.off(i - 1) * x[i - 1];
                if (i + 1 < n) r += T.off(i) * x[i + 1];
                resid += r * r;
            }
            if (std::sqrt(resid) <= residual_cap) return x;
        }
    }
    throw NoConvergence("eigenvector: inverse iteration did not converge (clustered eigenvalues?)");
}

}  // namespace trieig
