#pragma once

#include <cstdint>
#include <vector>

#include "trieig/sym_tri.hpp"

namespace trieig {

/// Desk-scale brute-force ground truth. Enumeration refuses instances with
/// more than kVertexEnumBits free endpoints rather than truncating silently.
inline constexpr int kVertexEnumBits = 24;          // 2n-1 <= 24
inline constexpr double kGridBudget = 1e7;          // full-grid point budget

/// Sampled or enumerated range of one eigenvalue index, with the matrices
/// attaining the extremes.
struct OracleRange {
    int k = 0;
    double lo = 0.0;
    double hi = 0.0;
    SymTri argmin;
    SymTri argmax;
    std::uint64_t seed = 0;  // generator seed for sampled ranges, 0 otherwise
};

/// Exact extrema of lambda_k over all vertex matrices (every entry at an
/// interval endpoint). Throws when 2n-1 > kVertexEnumBits.
OracleRange vertex_enumerate(const SymTriInterval& m, int k, double tol);

/// Vertex extrema of every eigenvalue index in one sweep.
std::vector<OracleRange> vertex_enumerate_all(const SymTriInterval& m, double tol);

struct GridOptions {
    int points_per_entry = 5;       // full-grid resolution
    bool random_mode = false;       // uniform random sampling instead of a grid
    std::uint64_t samples = 10000;  // sample count in random mode
    std::uint64_t seed = 1;
};

/// Extrema of lambda_k over a uniform grid or a seeded uniform random sample
/// of the box; always an inner approximation of the true range. Throws when
/// the full grid exceeds kGridBudget and random mode is off.
OracleRange grid_sample(const SymTriInterval& m, int k, const GridOptions& opts, double tol);

/// True iff some enumerated vertex has an eigenvalue within tol of lambda, or
/// a sign change of det(A - lambda I) across the vertex family certifies an
/// interior solution by continuity. Same enumeration cap as above.
bool is_eigenvalue_bruteforce(const SymTriInterval& m, double lambda, double tol);

}  // namespace trieig
