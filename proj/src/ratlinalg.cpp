#include "ratlinalg.hpp"

#include <utility>

namespace coxkit::detail {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), RatVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug(n, RatVector(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m[r][c];
    aug[r][n + r] = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  RatMatrix inv(n, RatVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv[r][c] = aug[r][n + c];
  return inv;
}

std::optional<RatVector> solve(const RatMatrix& m, std::size_t cols,
                               const RatVector& b) {
  RatMatrix aug(m.size(), RatVector(cols + 1));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug[r][c] = m[r][c];
    aug[r][cols] = b[r];
  }
  auto piv = rref(aug, cols + 1);
  RatVector x(cols);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == cols) return std::nullopt;
    x[piv[i]] = aug[i][cols];
  }
  return x;
}

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace coxkit::detail
