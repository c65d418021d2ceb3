#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "trieig/sym_tri.hpp"

namespace testsupport {

// ---- reference 4x4 instance (stiffness-style, negative couplings) ----

inline trieig::SymTriInterval example4x4_original() {
    using trieig::Interval;
    return trieig::SymTriInterval(
        {Interval(2975, 3025), Interval(4965, 5035), Interval(6955, 7045), Interval(8945, 9055)},
        {Interval(-2015, -1985), Interval(-3020, -2980), Interval(-4025, -3975)});
}

inline trieig::SymTriInterval example4x4_nonnegative() {
    using trieig::Interval;
    return trieig::SymTriInterval(
        {Interval(2975, 3025), Interval(4965, 5035), Interval(6955, 7045), Interval(8945, 9055)},
        {Interval(1985, 2015), Interval(2980, 3020), Interval(3975, 4025)});
}

// Published reference values for the 4x4 instance.
inline constexpr double kMidEigs[4] = {12641.0, 7064.5, 3389.9, 905.17};
inline constexpr double kMidEigTols[4] = {0.5, 0.1, 0.1, 0.01};
inline constexpr double kFinalLo[4] = {12560.8377, 7002.2827, 3337.0784, 842.9250};
inline constexpr double kFinalHi[4] = {12720.2273, 7126.8283, 3443.3128, 967.1083};
// Midpoint eigenvectors, one per row.
inline constexpr double kMidVecs[4][4] = {
    {0.05575, 0.26874, 0.64725, 0.71116},
    {-0.3546, -0.7206, -0.2595, 0.5363},
    {0.71884, 0.14012, -0.55442, 0.39531},
    {0.59535, -0.62357, 0.45425, -0.22446},
};
// Off-diagonals of the nonnegative-form upper witnesses.
inline constexpr double kUpperWitnessOff[4][3] = {
    {2015, 3020, 4025},
    {2015, 3020, 3975},
    {2015, 2980, 3975},
    {1985, 2980, 3975},
};

// ---- deterministic rng ----

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline trieig::SymTri random_point_matrix(Rng& rng, int n, double diag_mag = 5.0, double off_mag = 3.0) {
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
    for (double& v : d) v = rng.uniform(-diag_mag, diag_mag);
    for (double& v : e) v = rng.uniform(-off_mag, off_mag);
    return trieig::SymTri(std::move(d), std::move(e));
}

/// Interval matrix with well-separated diagonal clusters and positive
/// couplings; certifiably sign invariant via the separation fast paths.
inline trieig::SymTriInterval random_separated_instance(Rng& rng, int n) {
    std::vector<trieig::Interval> a(n), b(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
        const double center = 20.0 * (i + 1) + rng.uniform(-1.0, 1.0);
        const double rad = rng.uniform(0.05, 0.5);
        a[i] = trieig::Interval(center - rad, center + rad);
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double center = rng.uniform(0.4, 1.2);
        const double rad = rng.uniform(0.02, 0.2);
        b[i] = trieig::Interval(center - rad, center + rad);
    }
    return trieig::SymTriInterval(std::move(a), std::move(b));
}

/// Arbitrary nonnegative instance with positive couplings (not necessarily
/// invariant).
inline trieig::SymTriInterval random_nonnegative_instance(Rng& rng, int n, double spread = 10.0) {
    std::vector<trieig::Interval> a(n), b(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
        const double lo = rng.uniform(0.0, spread);
        a[i] = trieig::Interval(lo, lo + rng.uniform(0.0, spread / 2));
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double lo = rng.uniform(0.1, spread / 3);
        b[i] = trieig::Interval(lo, lo + rng.uniform(0.0, spread / 4));
    }
    return trieig::SymTriInterval(std::move(a), std::move(b));
}

/// General instance with entries of any sign (may need flips or widening).
inline trieig::SymTriInterval random_general_instance(Rng& rng, int n, double spread = 5.0) {
    std::vector<trieig::Interval> a(n), b(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
        const double lo = rng.uniform(-spread, spread);
        a[i] = trieig::Interval(lo, lo + rng.uniform(0.0, spread / 2));
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double lo = rng.uniform(-spread, spread);
        b[i] = trieig::Interval(lo, lo + rng.uniform(0.0, spread / 2));
    }
    return trieig::SymTriInterval(std::move(a), std::move(b));
}

// ---- dense reference solver (independent of the Sturm code path) ----

inline Eigen::MatrixXd to_dense(const trieig::SymTri& t) {
    const int n = t.order();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = t.diag(i);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.off(i);
    return a;
}

/// Eigenvalues by dense QR iteration, descending.
inline std::vector<double> dense_eigenvalues(const trieig::SymTri& t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(t), Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + t.order());
    std::reverse(out.begin(), out.end());
    return out;
}

/// Eigenvector of the k-th largest eigenvalue (1-based), dense path.
inline std::vector<double> dense_eigenvector(const trieig::SymTri& t, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(t));
    const int col = t.order() - k;  // ascending storage
    std::vector<double> out(t.order());
    for (int i = 0; i < t.order(); ++i) out[i] = solver.eigenvectors()(i, col);
    return out;
}

}  // namespace testsupport
