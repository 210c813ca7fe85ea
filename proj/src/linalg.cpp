#include "vakm/linalg.hpp"

namespace vakm {

std::vector<int> rref(SMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][c].invertible()) {
        p = i;
        break;
      }
    if (p == rows) {
      for (size_t i = r; i < rows; ++i)
        if (!m[i][c].is_zero())
          throw Error(Errc::unsupported, "pivot is not invertible");
      continue;
    }
    std::swap(m[r], m[p]);
    Scalar inv = m[r][c].inv();
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

std::vector<SVec> nullspace_basis(const SMat& a) {
  if (a.empty()) return {};
  SMat m = a;
  std::vector<int> pivots = rref(m);
  size_t cols = a[0].size();
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[size_t(c)] = true;
  std::vector<SVec> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    SVec v(cols, Scalar(0));
    v[free_c] = Scalar(1);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[size_t(pivots[pi])] = -m[pi][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const SMat& a, const SVec& b, SVec& x) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SMat m = a;
  for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  std::vector<int> pivots = rref(m);
  if (!pivots.empty() && size_t(pivots.back()) == cols) return false;
  x.assign(cols, Scalar(0));
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    x[size_t(pivots[pi])] = m[pi][cols];
  return true;
}

}  // namespace vakm
