#include "sparsefactor/resmat.hpp"

#include "sparsefactor/errors.hpp"

namespace sf {

PolyMatrix::PolyMatrix(int rows, int cols, const FieldPtr& F, int n)
    : rows_(rows), cols_(cols), n_(n), F_(F),
      e_(static_cast<size_t>(rows) * cols, SparsePoly(F, n)) {}

namespace {

int deg_in(const SparsePoly& f, int i) { return f.is_zero() ? -1 : f.individual_degree(i); }

struct Elim {
    int rank = 0;
    bool odd = false;  // parity of row and column swaps
    SparsePoly last;   // last pivot, the determinant when full rank
};

Elim bareiss(PolyMatrix M) {
    const int R = M.rows(), C = M.cols();
    Elim out;
    SparsePoly prev = SparsePoly::constant(M.field(), M.nvars(), 1);
    out.last = prev;
    for (int k = 0; k < std::min(R, C); ++k) {
        int pr = -1, pc = -1, best = 0;
        for (int r = k; r < R; ++r)
            for (int c = k; c < C; ++c) {
                const SparsePoly& e = M.at(r, c);
                if (e.is_zero()) continue;
                int td = e.total_degree();
                if (pr < 0 || td < best) pr = r, pc = c, best = td;
            }
        if (pr < 0) break;
        if (pr != k) {
            for (int c = 0; c < C; ++c) std::swap(M.at(pr, c), M.at(k, c));
            out.odd = !out.odd;
        }
        if (pc != k) {
            for (int r = 0; r < R; ++r) std::swap(M.at(r, pc), M.at(r, k));
            out.odd = !out.odd;
        }
        const SparsePoly piv = M.at(k, k);
        for (int r = k + 1; r < R; ++r) {
            const SparsePoly a = M.at(r, k);
            for (int c = k + 1; c < C; ++c) {
                SparsePoly v = piv * M.at(r, c) - a * M.at(k, c);
                auto q = exact_div(v, prev);
                if (!q) fail(ErrorKind::InternalError, "Bareiss step not exact");
                M.at(r, c) = std::move(*q);
            }
            M.at(r, k) = SparsePoly(M.field(), M.nvars());
        }
        prev = piv;
        out.last = piv;
        ++out.rank;
    }
    return out;
}

}  // namespace

PolyMatrix sylvester(const SparsePoly& f, const SparsePoly& g, int i) {
    const int d1 = std::max(deg_in(f, i), 0), d2 = std::max(deg_in(g, i), 0);
    if (d1 == 0 && d2 == 0) fail(ErrorKind::BothConstant, "sylvester matrix of two constants in the variable");
    const int N = d1 + d2;
    PolyMatrix M(N, N, f.field(), f.nvars());
    auto cf = uni_view(f, i), cg = uni_view(g, i);
    for (int r = 0; r < d2; ++r)
        for (int j = 0; j <= d1 && j < static_cast<int>(cf.size()); ++j) M.at(r, r + d1 - j) = cf[j];
    for (int r = 0; r < d1; ++r)
        for (int j = 0; j <= d2 && j < static_cast<int>(cg.size()); ++j) M.at(d2 + r, r + d2 - j) = cg[j];
    return M;
}

SparsePoly determinant(const PolyMatrix& M) {
    if (M.rows() != M.cols()) fail(ErrorKind::ArityMismatch, "determinant of a non-square matrix");
    if (M.rows() == 0) return SparsePoly::constant(M.field(), M.nvars(), 1);
    Elim e = bareiss(M);
    if (e.rank < M.rows()) return SparsePoly(M.field(), M.nvars());
    return e.odd ? -e.last : e.last;
}

int rank(const PolyMatrix& M) { return bareiss(M).rank; }

int kernel_dim(const PolyMatrix& M) { return M.cols() - rank(M); }

SparsePoly resultant(const SparsePoly& f, const SparsePoly& g, int i) {
    if (deg_in(f, i) <= 0 && deg_in(g, i) <= 0)
        fail(ErrorKind::BothConstant, "resultant of two constants in the variable");
    if (f.is_zero() || g.is_zero()) return SparsePoly(f.field(), f.nvars());
    return determinant(sylvester(f, g, i));
}

SparsePoly discriminant(const SparsePoly& f, int i) {
    if (deg_in(f, i) < 1) fail(ErrorKind::ConstantInVar, "discriminant in a variable of degree 0");
    return resultant(f, derivative(f, i), i);
}

DeltaK delta_k(const SparsePoly& f, int i, int k) {
    const int d = deg_in(f, i);
    if (d < 1) fail(ErrorKind::ConstantInVar, "delta_k in a variable of degree 0");
    if (k < 1) fail(ErrorKind::UsageError, "delta_k needs k >= 1");
    const int n = f.nvars();
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = v;
    SparsePoly F = remap_vars(f, perm, n + k);
    SparsePoly g(f.field(), n + k);
    SparsePoly der = F;
    for (int j = 1; j <= k; ++j) {
        der = derivative(der, i);
        g = g + SparsePoly::var(f.field(), n + k, n + j - 1) * der;
    }
    DeltaK out;
    out.char_ok = static_cast<std::uint64_t>(d) < f.F().p();
    if (g.is_zero()) {
        out.value = SparsePoly(f.field(), n + k);
        return out;
    }
    if (deg_in(g, i) < 1) {
        // res(f, g) = g^deg f when g is free of x_i
        out.value = pow(g, static_cast<unsigned>(d));
        return out;
    }
    out.value = resultant(F, g, i);
    return out;
}

}  // namespace sf
