#pragma once

#include <vector>

#include "sparsefactor/poly.hpp"

namespace sf {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, const FieldPtr& F, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    SparsePoly& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const SparsePoly& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const FieldPtr& field() const { return F_; }
    int nvars() const { return n_; }

private:
    int rows_ = 0, cols_ = 0, n_ = 0;
    FieldPtr F_;
    std::vector<SparsePoly> e_;
};

// Rows 0..d2-1 hold the shifts of f, rows d2..d1+d2-1 the shifts of g;
// column c is the coefficient of x_i^(d1+d2-1-c).  The determinant is
// lc(f)^d2 * prod g(roots of f).
PolyMatrix sylvester(const SparsePoly& f, const SparsePoly& g, int i);

// Fraction-free elimination; pivots are nonzero entries of least total
// degree, ties broken row-major.
SparsePoly determinant(const PolyMatrix& M);
int rank(const PolyMatrix& M);
int kernel_dim(const PolyMatrix& M);

SparsePoly resultant(const SparsePoly& f, const SparsePoly& g, int i);
// res(f, df/dx_i), no normalization: x^2+bx+c gives 4c-b^2.
SparsePoly discriminant(const SparsePoly& f, int i);

struct DeltaK {
    // Variables 0..n-1 as in f (x_i absent), lambda_j is variable n+j-1.
    SparsePoly value;
    // False when char <= deg_{x_i} f; the value is still exact.
    bool char_ok = true;
};
DeltaK delta_k(const SparsePoly& f, int i, int k);

}  // namespace sf
