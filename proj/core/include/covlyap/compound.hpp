#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace covlyap {

// Second exterior-power machinery. If W(t) solves W' = A(t) W, the vector of
// its 2x2 minors solves m' = A2 m with A2 the second additive compound of A.
// Reduced-state determinants are sums of squares of such minors
// (Cauchy-Binet), which sidesteps the catastrophic cancellation of forming
// sigma_xx sigma_pp - sigma_xp^2 from exponentially large covariance entries.

/// Row/column index pairs (i < j) in lexicographic order.
std::vector<std::pair<int, int>> index_pairs(int n);

/// Second additive compound A2 of an n x n matrix, sized C(n,2) x C(n,2).
Eigen::MatrixXd second_additive_compound(const Eigen::MatrixXd& A);

/// Matrix of all 2x2 minors of W: entry ((i,j), (k,l)) is
/// W(i,k) W(j,l) - W(i,l) W(j,k), pairs in index_pairs order.
Eigen::MatrixXd wedge2(const Eigen::MatrixXd& W);

}  // namespace covlyap
