#include "vakm/lie.hpp"

#include "vakm/linalg.hpp"

namespace vakm {

std::vector<Rat> LiePresentation::bracket(const std::vector<Rat>& x,
                                          const std::vector<Rat>& y) const {
  std::vector<Rat> r(size_t(dim()), Rat(0));
  for (int i = 0; i < dim(); ++i) {
    if (x[size_t(i)] == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[size_t(j)] == 0) continue;
      Rat f = x[size_t(i)] * y[size_t(j)];
      for (int p = 0; p < dim(); ++p)
        r[size_t(p)] += f * c[size_t(i)][size_t(j)][size_t(p)];
    }
  }
  return r;
}

Rat LiePresentation::kappa(const std::vector<Rat>& x,
                           const std::vector<Rat>& y) const {
  Rat r(0);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      r += x[size_t(i)] * y[size_t(j)] * kappa_g[size_t(i)][size_t(j)];
  return r;
}

LiePresentation LiePresentation::at_level(const Scalar& k) const {
  LiePresentation g(*this);
  g.level = k;
  return g;
}

namespace {

using Mat = std::vector<std::vector<Rat>>;

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size();
  Mat r(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Mat mat_comm(const Mat& a, const Mat& b) {
  Mat ab = mat_mul(a, b), ba = mat_mul(b, a);
  for (size_t i = 0; i < ab.size(); ++i)
    for (size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
  return ab;
}

// builds the presentation from a faithful matrix realization: structure
// constants by solving on the flattened basis, then the form from ad-traces
LiePresentation from_matrices(std::vector<std::string> names,
                              const std::vector<Mat>& basis,
                              std::vector<int> exponents) {
  int d = int(basis.size());
  size_t n = basis[0].size();
  SMat flat(n * n, SVec(size_t(d), Scalar(0)));
  for (int b = 0; b < d; ++b)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        flat[i * n + j][size_t(b)] = Scalar(basis[size_t(b)][i][j]);

  LiePresentation g;
  g.names = std::move(names);
  g.exponents = std::move(exponents);
  g.c.assign(size_t(d), std::vector<std::vector<Rat>>(
                            size_t(d), std::vector<Rat>(size_t(d), Rat(0))));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat cm = mat_comm(basis[size_t(i)], basis[size_t(j)]);
      SVec rhs(n * n, Scalar(0));
      for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) rhs[p * n + q] = Scalar(cm[p][q]);
      SVec x;
      if (!solve(flat, rhs, x))
        throw Error(Errc::bad_argument, "commutator leaves the span");
      for (int p = 0; p < d; ++p)
        g.c[size_t(i)][size_t(j)][size_t(p)] = x[size_t(p)].rational_value();
    }

  // ad matrices from the structure constants
  std::vector<Mat> ad(size_t(d), Mat(size_t(d), std::vector<Rat>(size_t(d), Rat(0))));
  for (int i = 0; i < d; ++i)
    for (int q = 0; q < d; ++q)
      for (int p = 0; p < d; ++p)
        ad[size_t(i)][size_t(p)][size_t(q)] = g.c[size_t(i)][size_t(q)][size_t(p)];
  g.kappa_g.assign(size_t(d), std::vector<Rat>(size_t(d), Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat m = mat_mul(ad[size_t(i)], ad[size_t(j)]);
      Rat tr(0);
      for (int p = 0; p < d; ++p) tr += m[size_t(p)][size_t(p)];
      g.kappa_g[size_t(i)][size_t(j)] = tr;
    }
  return g;
}

Mat unit(size_t n, size_t i, size_t j, const Rat& v = Rat(1)) {
  Mat m(n, std::vector<Rat>(n, Rat(0)));
  m[i][j] = v;
  return m;
}

Mat mat_sub(Mat a, const Mat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
  return a;
}

}  // namespace

LiePresentation build_sl2() {
  std::vector<Mat> basis = {
      unit(2, 0, 1),                        // e
      mat_sub(unit(2, 0, 0), unit(2, 1, 1)),  // h
      unit(2, 1, 0),                        // f
  };
  return from_matrices({"e", "h", "f"}, basis, {1});
}

LiePresentation build_sl3() {
  std::vector<Mat> basis = {
      unit(3, 0, 1),                        // E12
      unit(3, 0, 2),                        // E13
      unit(3, 1, 2),                        // E23
      mat_sub(unit(3, 0, 0), unit(3, 1, 1)),  // h1
      mat_sub(unit(3, 1, 1), unit(3, 2, 2)),  // h2
      unit(3, 1, 0),                        // E21
      unit(3, 2, 0),                        // E31
      unit(3, 2, 1),                        // E32
  };
  return from_matrices({"E12", "E13", "E23", "h1", "h2", "E21", "E31", "E32"},
                       basis, {1, 2});
}

}  // namespace vakm
