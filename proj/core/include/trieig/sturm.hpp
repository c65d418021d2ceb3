#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trieig/sym_tri.hpp"

namespace trieig {

/// Raised when inverse iteration fails to converge (clustered eigenvalues);
/// the caller should retry with a tighter eigenvalue tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signs of the Sturm sequence chi_0, ..., chi_n evaluated at a query point,
/// where chi_j(x) = det(x I - A_j) is the monic characteristic polynomial of
/// the leading principal submatrix of size j (chi_0 == 1). Zero values are
/// resolved by the pivot substitution rule, so every sign is +-1.
struct SturmEvaluation {
    std::vector<std::int8_t> signs;  // n+1 entries
    int count_below = 0;             // eigenvalues strictly below the query point
};

/// Entrywise signs {-1, 0, +1} of an eigenvector, up to a global sign.
struct SignPattern {
    std::vector<std::int8_t> s;

    int size() const { return static_cast<int>(s.size()); }
    bool has_zero() const {
        for (auto v : s)
            if (v == 0) return true;
        return false;
    }
};

/// Number of eigenvalues of T strictly below lambda, via the LDL^T pivot
/// recurrence q_j = (a_j - lambda) - b_j^2 / q_{j-1}. Pivots with
/// |q| <= pivmin are replaced by -pivmin, where pivmin is the smallest
/// normal double times max(1, max_j b_j^2); this keeps the recurrence
/// overflow-free for any order.
int eigenvalue_count_below(const SymTri& T, double lambda);

/// Full Sturm evaluation (all n+1 signs plus the count).
SturmEvaluation sturm_count(const SymTri& T, double lambda);

/// Default bisection tolerance: 1e-12 * max(1, ||T||_inf).
double default_tolerance(const SymTri& T);

/// k-th largest eigenvalue (k = 1..n, lambda_1 >= ... >= lambda_n), located
/// by bisection on the Sturm count over the Gershgorin enclosure until the
/// bracket width is at most tol.
double kth_eigenvalue(const SymTri& T, int k, double tol);

/// All eigenvalues, descending.
std::vector<double> all_eigenvalues(const SymTri& T, double tol);

/// Entrywise signs of the eigenvector for an eigenvalue approximation
/// lambda_k, read off the Sturm sequence: with all b > 0 the sign of entry j
/// equals the sign of chi_{j-1}(lambda_k). An entry is reported 0 when its
/// pivot magnitude falls below n * eps * max(1, ||T||_inf). Requires b > 0.
SignPattern eigenvector_signs(const SymTri& T, double lambda_k);

/// Unit eigenvector for an approximate simple eigenvalue, by inverse
/// iteration with at most 5 restarts from perturbed shifts. Throws
/// NoConvergence if the residual test ||Tx - lambda x|| <= 1e-8 * ||T||_inf
/// cannot be met.
std::vector<double> eigenvector(const SymTri& T, double lambda_k);

}  // namespace trieig
