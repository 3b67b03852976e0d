#include "covlyap/compound.hpp"

#include <stdexcept>

namespace covlyap {

std::vector<std::pair<int, int>> index_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

Eigen::MatrixXd second_additive_compound(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || n < 2) {
    throw std::invalid_argument("second_additive_compound: need square n >= 2");
  }
  const auto pairs = index_pairs(n);
  const int m = static_cast<int>(pairs.size());
  auto pair_index = [n](int i, int j) {
    // lexicographic rank of (i, j), i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
  // d/dt (w_i ^ w_j) = sum_k A_ik w_k ^ w_j + sum_k A_jk w_i ^ w_k
  for (int r = 0; r < m; ++r) {
    const auto [i, j] = pairs[r];
    for (int k = 0; k < n; ++k) {
      if (k != j) {
        const double sgn = k < j ? 1.0 : -1.0;
        C(r, pair_index(std::min(k, j), std::max(k, j))) += sgn * A(i, k);
      }
      if (k != i) {
        const double sgn = i < k ? 1.0 : -1.0;
        C(r, pair_index(std::min(i, k), std::max(i, k))) += sgn * A(j, k);
      }
    }
  }
  return C;
}

Eigen::MatrixXd wedge2(const Eigen::MatrixXd& W) {
  const int n = static_cast<int>(W.rows());
  if (W.cols() != n || n < 2) {
    throw std::invalid_argument("wedge2: need square n >= 2");
  }
  const auto pairs = index_pairs(n);
  const int m = static_cast<int>(pairs.size());
  Eigen::MatrixXd M(m, m);
  for (int r = 0; r < m; ++r) {
    const auto [i, j] = pairs[r];
    for (int c = 0; c < m; ++c) {
      const auto [k, l] = pairs[c];
      M(r, c) = W(i, k) * W(j, l) - W(i, l) * W(j, k);
    }
  }
  return M;
}

}  // namespace covlyap
