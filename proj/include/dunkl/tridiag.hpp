#pragma once

#include <cstddef>
#include <vector>

namespace dunkl {

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL with
/// Wilkinson shifts. d: diagonal (n), e: off-diagonal (n, e[n-1] ignored).
/// On return d holds the eigenvalues (unsorted) and, if first_row is given,
/// first_row[i] is the first component of the normalized eigenvector for d[i]
/// (caller initializes it, normally to e_0).
///
/// Deflation uses |e[m]| <= tol * (|d[m]| + |d[m+1]|). Throws ConvergenceError
/// once the total rotation-sweep budget max_iters is spent.
void tridiag_ql_implicit(std::vector<double>& d, std::vector<double>& e,
                         std::vector<double>* first_row, double tol,
                         std::size_t max_iters);

}  // namespace dunkl
