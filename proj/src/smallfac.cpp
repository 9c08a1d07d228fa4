#include "sparsefactor/smallfac.hpp"

#include <algorithm>
#include <functional>

namespace sf {

namespace {

bool upoly_less(const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

UPoly xpoly() { return UPoly{0, 1}; }

// ---------------------------------------------------------------- univariate

std::vector<std::pair<UPoly, int>> sqf_rec(const Field& F, const UPoly& f) {
    std::vector<std::pair<UPoly, int>> out;
    if (up::deg(f) < 1) return out;
    UPoly c = up::gcd(F, f, up::deriv(F, f));
    UPoly w = up::quo(F, f, c);
    int i = 1;
    while (up::deg(w) > 0) {
        UPoly y = up::gcd(F, w, c);
        UPoly z = up::quo(F, w, y);
        if (up::deg(z) > 0) out.push_back({z, i});
        ++i;
        w = std::move(y);
        c = up::quo(F, c, w);
    }
    if (up::deg(c) > 0) {
        UPoly r = up::monic(F, up::pth_root(F, c));
        for (auto& [g, m] : sqf_rec(F, r)) out.push_back({g, m * static_cast<int>(F.p())});
    }
    return out;
}

std::vector<std::pair<UPoly, int>> ddf(const Field& F, UPoly f) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly h = up::mod(F, xpoly(), f);
    for (int d = 1; 2 * d <= up::deg(f); ++d) {
        h = up::powmod(F, h, F.size(), f);
        UPoly g = up::gcd(F, up::sub(F, h, xpoly()), f);
        if (up::deg(g) > 0) {
            out.push_back({g, d});
            f = up::quo(F, f, g);
            h = up::mod(F, h, f);
        }
    }
    if (up::deg(f) > 0) out.push_back({f, up::deg(f)});
    return out;
}

// Basis of {v : v^p = v} in K[x]/g over the prime subfield.
std::vector<UPoly> berlekamp_basis(const Field& F, const UPoly& g) {
    const int n = up::deg(g);
    const int k = F.k();
    const int N = n * k;
    const std::uint64_t p = F.p();
    FieldPtr Pp = F.prime_subfield();
    const Field& P = *Pp;
    UPoly xp = up::powmod(F, xpoly(), p, g);
    std::vector<std::vector<Fe>> A(N, std::vector<Fe>(N, 0));  // A[row][col]
    UPoly Xj{1};
    std::vector<Fe> tpow(k);
    {
        Fe t = 1;
        for (int a = 0; a < k; ++a) {
            tpow[a] = t;  // encoding of t^a is p^a
            if (a + 1 < k) t *= p;
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < k; ++a) {
            Fe fr = F.frobenius(tpow[a]);
            UPoly img = up::scale(F, Xj, fr);
            int col = j * k + a;
            for (int c = 0; c < n; ++c) {
                Fe v = c < static_cast<int>(img.size()) ? img[c] : 0;
                auto dg = F.digits(v);
                for (int b = 0; b < k; ++b) A[c * k + b][col] = P.add(A[c * k + b][col], dg[b] % p);
            }
            A[col][col] = P.sub(A[col][col], 1);
        }
        Xj = up::mulmod(F, Xj, xp, g);
    }
    // reduced row echelon form
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < N && row < N; ++col) {
        int piv = -1;
        for (int r = row; r < N; ++r)
            if (A[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[row]);
        Fe inv = P.inv(A[row][col]);
        for (auto& x : A[row]) x = P.mul(x, inv);
        for (int r = 0; r < N; ++r) {
            if (r == row || !A[r][col]) continue;
            Fe fct = A[r][col];
            for (int c = col; c < N; ++c)
                if (A[row][c]) A[r][c] = P.sub(A[r][c], P.mul(fct, A[row][c]));
        }
        pivcol.push_back(col);
        ++row;
    }
    std::vector<bool> is_piv(N, false);
    for (int c : pivcol) is_piv[c] = true;
    std::vector<UPoly> basis;
    for (int free = 0; free < N; ++free) {
        if (is_piv[free]) continue;
        std::vector<Fe> v(N, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = P.neg(A[r][free]);
        UPoly u(n, 0);
        for (int c = 0; c < n; ++c) {
            std::vector<std::uint64_t> dg(k);
            for (int b = 0; b < k; ++b) dg[b] = v[c * k + b];
            u[c] = F.from_digits(dg);
        }
        up::trim(u);
        basis.push_back(u);
    }
    return basis;
}

void split_large(const Field& F, const UPoly& h, const UPoly& v, int d, std::vector<UPoly>& out) {
    if (up::deg(h) == d) {
        out.push_back(h);
        return;
    }
    UPoly vv = up::mod(F, v, h);
    if (up::deg(vv) <= 0) {
        out.push_back(h);
        return;
    }
    const std::uint64_t e = (F.p() - 1) / 2;
    for (Fe c = 0; c < 1000 && c < F.p(); ++c) {
        UPoly w = up::add(F, vv, UPoly{c});
        UPoly s = up::gcd(F, h, w);
        if (up::deg(s) <= 0 || up::deg(s) == up::deg(h)) {
            UPoly pw = up::sub(F, up::powmod(F, w, e, h), UPoly{1});
            s = up::gcd(F, h, pw);
        }
        if (up::deg(s) > 0 && up::deg(s) < up::deg(h)) {
            split_large(F, s, v, d, out);
            split_large(F, up::quo(F, h, s), v, d, out);
            return;
        }
    }
    out.push_back(h);
}

std::vector<UPoly> edf(const Field& F, const UPoly& g, int d) {
    if (up::deg(g) == d) return {g};
    auto basis = berlekamp_basis(F, g);
    const size_t r = basis.size();
    std::vector<UPoly> facs{g};
    const bool small_p = F.p() <= 4096;
    for (auto& v : basis) {
        if (facs.size() == r) break;
        if (up::deg(v) <= 0) continue;
        std::vector<UPoly> next;
        for (auto& h : facs) {
            if (up::deg(h) == d) {
                next.push_back(h);
                continue;
            }
            if (small_p) {
                UPoly rem = h;
                for (Fe c = 0; c < F.p() && up::deg(rem) > 0; ++c) {
                    UPoly s = up::gcd(F, rem, up::sub(F, up::mod(F, v, rem), UPoly{c}));
                    if (up::deg(s) > 0) {
                        next.push_back(s);
                        rem = up::quo(F, rem, s);
                    }
                }
                if (up::deg(rem) > 0) next.push_back(rem);
            } else {
                split_large(F, h, v, d, next);
            }
        }
        facs = std::move(next);
    }
    if (facs.size() != r) fail(ErrorKind::InternalError, "equal-degree splitting incomplete");
    return facs;
}

}  // namespace

std::vector<std::pair<UPoly, int>> uni_squarefree(const Field& F, const UPoly& f) {
    auto out = sqf_rec(F, up::monic(F, f));
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return upoly_less(a.first, b.first);
    });
    return out;
}

UniFactorization uni_factor(const Field& F, const UPoly& f0) {
    UPoly f = f0;
    up::trim(f);
    if (f.empty()) fail(ErrorKind::ZeroPolynomial, "factorization of zero");
    UniFactorization res;
    res.unit = f.back();
    if (up::deg(f) == 0) return res;
    for (auto& [z, m] : sqf_rec(F, up::monic(F, f)))
        for (auto& [g, d] : ddf(F, z))
            for (auto& h : edf(F, g, d)) res.factors.push_back({up::monic(F, h), m});
    std::sort(res.factors.begin(), res.factors.end(), [](auto& a, auto& b) {
        if (upoly_less(a.first, b.first)) return true;
        if (upoly_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
    UPoly chk{res.unit};
    for (auto& [g, m] : res.factors)
        for (int i = 0; i < m; ++i) chk = up::mul(F, chk, g);
    if (chk != f) fail(ErrorKind::InternalError, "univariate factorization remultiplication failed");
    return res;
}

bool uni_is_irreducible(const Field& F, const UPoly& f) {
    if (up::deg(f) < 1) return false;
    auto s = sqf_rec(F, up::monic(F, f));
    if (s.size() != 1 || s[0].second != 1) return false;
    auto d = ddf(F, s[0].first);
    return d.size() == 1 && d[0].second == up::deg(f);
}

// ---------------------------------------------------------------- gcd

namespace {

DPoly one_like(const DPoly& f) { return DPoly::constant(f.field(), f.nvars(), 1); }

}  // namespace

DPoly content_in(const DPoly& f, int v) {
    if (f.is_zero()) return f;
    if (f.deg(v) <= 0) return f.canonical();
    auto cs = f.coeffs_in(v);
    DPoly g(f.field(), f.nvars());
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return one_like(f);
    }
    return g.canonical();
}

DPoly primitive_in(const DPoly& f, int v) {
    DPoly c = content_in(f, v);
    if (c.is_constant()) return f;
    auto q = exact_div(f, c);
    if (!q) fail(ErrorKind::InternalError, "content does not divide");
    return *q;
}

namespace {

// With variable 0 as the coefficient ring variable, the blocks of length
// ext[0] are the coefficients in the remaining variables.
UPoly block(const DPoly& f, size_t r) {
    const int e0 = f.ext()[0];
    UPoly u(f.data().begin() + r * e0, f.data().begin() + (r + 1) * e0);
    up::trim(u);
    return u;
}

size_t nblocks(const DPoly& f) { return f.data().size() / f.ext()[0]; }

std::vector<int> rest_exp(const DPoly& f, size_t r) {
    std::vector<int> e(f.nvars(), 0);
    for (int v = 1; v < f.nvars(); ++v) {
        e[v] = static_cast<int>(r % f.ext()[v]);
        r /= f.ext()[v];
    }
    return e;
}

// lex with the last variable most significant
int lex_cmp(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t v = a.size(); v-- > 1;)
        if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
    return 0;
}

std::pair<std::vector<int>, UPoly> lex_lead(const DPoly& f) {
    std::pair<std::vector<int>, UPoly> best;
    bool have = false;
    for (size_t r = 0; r < nblocks(f); ++r) {
        UPoly u = block(f, r);
        if (u.empty()) continue;
        auto e = rest_exp(f, r);
        if (!have || lex_cmp(e, best.first) > 0) best = {e, u}, have = true;
    }
    return best;
}

UPoly block_content(const DPoly& f) {
    UPoly g;
    for (size_t r = 0; r < nblocks(f); ++r) {
        UPoly u = block(f, r);
        if (u.empty()) continue;
        g = up::gcd(f.F(), g, u);
        if (up::deg(g) == 0) break;
    }
    return g;
}

DPoly block_divide(const DPoly& f, const UPoly& c) {
    if (up::deg(c) <= 0) return f;
    DPoly r = f;
    const int e0 = f.ext()[0];
    for (size_t b = 0; b < nblocks(f); ++b) {
        UPoly q = up::quo(f.F(), block(f, b), c);
        for (int i = 0; i < e0; ++i) r.data()[b * e0 + i] = i < static_cast<int>(q.size()) ? q[i] : 0;
    }
    r.normalize();
    return r;
}

DPoly brown(const DPoly& a, const DPoly& b);

DPoly brown_main(const DPoly& A, const DPoly& B) {
    const Field& F = A.F();
    const int nv = A.nvars();
    UPoly ca = block_content(A), cb = block_content(B);
    UPoly c = up::gcd(F, ca, cb);
    DPoly pa = block_divide(A, ca), pb = block_divide(B, cb);
    UPoly la = lex_lead(pa).second, lb = lex_lead(pb).second;
    UPoly gam = up::gcd(F, la, lb);
    const int bound = std::min(pa.deg(0), pb.deg(0)) + up::deg(gam);
    DPoly cpoly = DPoly::from_upoly(A.field(), nv, 0, c);

    std::vector<Fe> xs;
    std::vector<DPoly> ys;
    std::vector<int> cur;
    for (std::uint64_t i = 0; i < F.size(); ++i) {
        Fe al = F.element(i);
        if (up::eval(F, la, al) == 0 || up::eval(F, lb, al) == 0) continue;
        DPoly g = brown(pa.eval_var(0, al), pb.eval_var(0, al));
        if (g.is_constant()) return cpoly;
        auto [lm, lcv] = lex_lead(g);
        g = scale(g, F.mul(up::eval(F, gam, al), F.inv(lcv[0])));
        if (!xs.empty()) {
            int s = lex_cmp(lm, cur);
            if (s > 0) continue;
            if (s < 0) xs.clear(), ys.clear();
        }
        cur = lm;
        xs.push_back(al);
        ys.push_back(g);
        if (static_cast<int>(xs.size()) <= bound) continue;
        std::vector<int> ext(nv, 1);
        for (auto& y : ys)
            for (int v = 1; v < nv; ++v) ext[v] = std::max(ext[v], y.ext()[v]);
        std::vector<DPoly> R;
        for (auto& y : ys) R.push_back(y.reshaped(ext));
        const int np = static_cast<int>(xs.size());
        std::vector<int> gext = ext;
        gext[0] = np;
        DPoly G(A.field(), gext);
        G.data().assign(R[0].data().size() * np, 0);
        std::vector<Fe> vals(np);
        for (size_t r = 0; r < R[0].data().size(); ++r) {
            bool any = false;
            for (int j = 0; j < np; ++j) vals[j] = R[j].data()[r], any |= vals[j] != 0;
            if (!any) continue;
            UPoly u = up::interpolate(F, xs, vals);
            for (size_t k = 0; k < u.size(); ++k) G.data()[r * np + k] = u[k];
        }
        G.normalize();
        G = block_divide(G, block_content(G));
        if (divides(G, pa) && divides(G, pb)) return cpoly * G;
    }
    // Field too small: work in an extension and pull back the monic gcd.
    std::uint64_t need = 4 * static_cast<std::uint64_t>(bound + up::deg(la) + up::deg(lb) + 8);
    auto W = working_extension(A.field(), std::max<std::uint64_t>(need, F.size() + 1));
    DPoly g = brown(map_field(A, W.emb), map_field(B, W.emb)).canonical();
    auto back = pull_field(g, W.emb);
    if (!back) fail(ErrorKind::InternalError, "gcd not defined over the base field");
    return *back;
}

DPoly brown(const DPoly& a, const DPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return one_like(a);
    const int nv = a.nvars();
    std::vector<int> act;
    for (int v = 0; v < nv; ++v)
        if (a.deg(v) > 0 || b.deg(v) > 0) act.push_back(v);
    if (act.size() == 1) {
        int v = act[0];
        UPoly g = up::gcd(a.F(), a.to_upoly(v), b.to_upoly(v));
        return DPoly::from_upoly(a.field(), nv, v, g);
    }
    int w = act[0];
    for (int v : act)
        if (std::max(a.deg(v), b.deg(v)) < std::max(a.deg(w), b.deg(w))) w = v;
    return brown_main(a.swapped(0, w), b.swapped(0, w)).swapped(0, w);
}

}  // namespace

DPoly gcd(const DPoly& a, const DPoly& b) {
    if (a.is_zero()) return b.canonical();
    if (b.is_zero()) return a.canonical();
    return brown(a, b).canonical();
}

// ---------------------------------------------------------------- multivariate factorization

namespace {

using FList = std::vector<std::pair<DPoly, int>>;

void merge_factor(FList& L, const DPoly& g, int m) {
    DPoly c = g.canonical();
    for (auto& [h, k] : L)
        if (h == c) {
            k += m;
            return;
        }
    L.push_back({c, m});
}

struct Trunc {
    std::vector<int> K;  // per variable; variable 0 unbounded
    int N;               // total degree bound in variables >= 1
};

DPoly trunc(const DPoly& a, const Trunc& T) {
    const int nv = a.nvars();
    bool need = false;
    int tot = 0;
    for (int v = 1; v < nv; ++v) {
        if (a.ext()[v] > T.K[v]) need = true;
        tot += a.ext()[v] - 1;
    }
    if (tot >= T.N) need = true;
    if (!need) return a;
    std::vector<int> lim = a.ext();
    for (int v = 1; v < nv; ++v) lim[v] = std::min(lim[v], T.K[v]);
    DPoly r = a.truncated(lim);
    // drop total degree >= N
    std::vector<int> e(nv, 0);
    int cur = 0;
    auto& c = r.data();
    const auto& ext = r.ext();
    for (size_t i = 0; i < c.size(); ++i) {
        if (cur >= T.N) c[i] = 0;
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext[v]) {
                if (v > 0) ++cur;
                break;
            }
            if (v > 0) cur -= ext[v] - 1;
            e[v] = 0;
        }
    }
    r.normalize();
    return r;
}

DPoly tmul(const DPoly& a, const DPoly& b, const Trunc& T) {
    std::vector<int> lim(a.nvars());
    lim[0] = a.ext()[0] + b.ext()[0];
    for (int v = 1; v < a.nvars(); ++v) lim[v] = std::min(T.K[v], T.N);
    return trunc(a.truncated(lim) * b.truncated(lim), T);
}

// Division by h monic in variable 0, coefficients truncated.
void tdivmod(const DPoly& a, const DPoly& h, const Trunc& T, DPoly& q, DPoly& r) {
    auto A = a.coeffs_in(0);
    auto H = h.coeffs_in(0);
    const int dh = static_cast<int>(H.size()) - 1;
    const int nv = a.nvars();
    if (static_cast<int>(A.size()) <= dh || a.is_zero()) {
        q = DPoly(a.field(), nv);
        r = a;
        return;
    }
    std::vector<DPoly> Q(A.size() - dh, DPoly(a.field(), nv));
    for (int j = static_cast<int>(A.size()) - 1; j >= dh; --j) {
        if (A[j].is_zero()) continue;
        DPoly c = A[j];
        Q[j - dh] = c;
        for (int i = 0; i < dh; ++i) A[j - dh + i] = A[j - dh + i] - tmul(c, H[i], T);
        A[j] = DPoly(a.field(), nv);
    }
    q = DPoly::from_coeffs(Q, 0, a.field(), nv);
    A.resize(dh);
    r = A.empty() ? DPoly(a.field(), nv) : DPoly::from_coeffs(A, 0, a.field(), nv);
}

void lift2(const DPoly& f, DPoly& g, DPoly& h, const std::vector<int>& K, int maxN) {
    const Field& F = f.F();
    const int nv = f.nvars();
    UPoly s0, t0;
    UPoly gu = g.to_upoly(0), hu = h.to_upoly(0);
    UPoly one = up::xgcd(F, gu, hu, s0, t0);
    if (one != UPoly{1}) fail(ErrorKind::InternalError, "Hensel factors not coprime");
    DPoly s = DPoly::from_upoly(f.field(), nv, 0, s0);
    DPoly t = DPoly::from_upoly(f.field(), nv, 0, t0);
    DPoly onep = DPoly::constant(f.field(), nv, 1);
    int N = 1;
    while (N < maxN) {
        N = std::min(2 * N, maxN);
        Trunc T{K, N};
        DPoly e = trunc(f - tmul(g, h, T), T);
        DPoly q, r;
        tdivmod(tmul(s, e, T), h, T, q, r);
        DPoly g2 = trunc(g + tmul(t, e, T) + tmul(q, g, T), T);
        DPoly h2 = trunc(h + r, T);
        DPoly b = trunc(tmul(s, g2, T) + tmul(t, h2, T) - onep, T);
        DPoly c, d;
        tdivmod(tmul(s, b, T), h2, T, c, d);
        s = trunc(s - d, T);
        t = trunc(t - tmul(t, b, T) - tmul(c, g2, T), T);
        g = std::move(g2);
        h = std::move(h2);
    }
}

// Series inverse of a (constant term nonzero, no variable 0) modulo the truncation.
DPoly series_inverse(const DPoly& a, const std::vector<int>& K, int maxN) {
    const int nv = a.nvars();
    Fe a0 = a.at(std::vector<int>(nv, 0));
    DPoly inv = DPoly::constant(a.field(), nv, a.F().inv(a0));
    DPoly two = DPoly::constant(a.field(), nv, a.F().from_int(2));
    int N = 1;
    while (N < maxN) {
        N = std::min(2 * N, maxN);
        Trunc T{K, N};
        inv = tmul(inv, trunc(two - tmul(a, inv, T), T), T);
    }
    return inv;
}

class Factorer {
public:
    explicit Factorer(const FactorConfig& cfg) : cfg_(cfg) {}

    FList rec(const DPoly& f);

private:
    FList core(const DPoly& f, int X);
    FList core_extension(const DPoly& f, int X);
    bool find_point(const DPoly& g, std::vector<Fe>& point, UPoly& image);
    FList lift_and_recombine(const DPoly& g, const std::vector<UPoly>& ufac);

    const FactorConfig& cfg_;
    long trials_ = 0;
};

FList Factorer::rec(const DPoly& f) {
    FList out;
    if (f.is_constant()) return out;
    const int nv = f.nvars();
    std::vector<int> order;
    for (int v = 0; v < nv; ++v)
        if (f.deg(v) > 0) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f.deg(a) < f.deg(b); });
    int X = -1;
    DPoly df;
    for (int v : order) {
        df = f.derivative(v);
        if (!df.is_zero()) {
            X = v;
            break;
        }
    }
    if (X < 0) {
        DPoly r = f.pth_root();
        for (auto& [g, m] : rec(r)) merge_factor(out, g, m * static_cast<int>(f.F().p()));
        return out;
    }
    DPoly cur = f;
    DPoly c = content_in(cur, X);
    if (!c.is_constant()) {
        for (auto& [g, m] : rec(c)) merge_factor(out, g, m);
        cur = *exact_div(cur, c);
        df = cur.derivative(X);
    }
    DPoly g = gcd(cur, df);
    if (!g.is_constant()) {
        for (auto& [h, m] : rec(g)) merge_factor(out, h, m);
        for (auto& [h, m] : rec(*exact_div(cur, g))) merge_factor(out, h, m);
        return out;
    }
    for (auto& [h, m] : core(cur, X)) merge_factor(out, h, m);
    return out;
}

bool Factorer::find_point(const DPoly& g, std::vector<Fe>& point, UPoly& image) {
    const Field& F = g.F();
    const int nv = g.nvars();
    std::vector<int> others;
    for (int v = 1; v < nv; ++v)
        if (g.deg(v) > 0) others.push_back(v);
    const int t = static_cast<int>(others.size());
    DPoly lc = g.lc_in(0);
    const int dX = g.deg(0);
    long tried = 0;
    std::vector<Fe> a(t, 0);
    for (std::uint64_t radius = 0; radius < F.size(); ++radius) {
        // all tuples in [0, radius]^t with max == radius, lexicographic
        std::vector<std::uint64_t> cur(t, 0);
        while (true) {
            bool has_r = false;
            for (auto x : cur) has_r |= x == radius;
            if (has_r || t == 0) {
                if (++tried > cfg_.point_budget) return false;
                std::vector<Fe> pt(nv, 0);
                for (int i = 0; i < t; ++i) pt[others[i]] = F.element(cur[i]);
                if (lc.eval(pt) != 0) {
                    DPoly im = g;
                    for (int i = 0; i < t; ++i) im = im.eval_var(others[i], pt[others[i]]);
                    UPoly u = im.to_upoly(0);
                    if (up::deg(u) == dX && up::deg(up::gcd(F, u, up::deriv(F, u))) == 0) {
                        point = pt;
                        image = u;
                        return true;
                    }
                }
            }
            int i = t - 1;
            while (i >= 0 && cur[i] == radius) cur[i--] = 0;
            if (i < 0) break;
            ++cur[i];
        }
        if (t == 0) break;
    }
    return false;
}

FList Factorer::lift_and_recombine(const DPoly& g, const std::vector<UPoly>& ufac) {
    const int nv = g.nvars();
    const FieldPtr& Fp = g.field();
    DPoly lc = g.lc_in(0);
    std::vector<int> K(nv, 1);
    int maxN = 1;
    for (int v = 1; v < nv; ++v) {
        K[v] = std::max(0, g.deg(v)) + std::max(0, lc.deg(v)) + 1;
        maxN += K[v] - 1;
    }
    K[0] = 1 << 30;
    Trunc full{K, maxN};
    DPoly Ft = tmul(g, series_inverse(lc, K, maxN), full);
    std::vector<DPoly> lifted;
    DPoly rest = Ft;
    for (size_t i = 0; i + 1 < ufac.size(); ++i) {
        DPoly gi = DPoly::from_upoly(Fp, nv, 0, ufac[i]);
        UPoly hu{1};
        for (size_t j = i + 1; j < ufac.size(); ++j) hu = up::mul(g.F(), hu, ufac[j]);
        DPoly hi = DPoly::from_upoly(Fp, nv, 0, hu);
        lift2(rest, gi, hi, K, maxN);
        lifted.push_back(gi);
        rest = hi;
    }
    lifted.push_back(rest);

    FList out;
    DPoly fcur = g;
    size_t k = 1;
    while (2 * k <= lifted.size()) {
        bool found = false;
        const size_t r = lifted.size();
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            if (++trials_ > cfg_.recombination_cap)
                fail(ErrorKind::LiftBudgetExceeded, "factor recombination exceeded its trial budget");
            DPoly lcf = fcur.lc_in(0);
            DPoly C = lcf;
            for (size_t i : idx) C = tmul(C, lifted[i], full);
            auto q = exact_div(lcf * fcur, C);
            if (q) {
                DPoly h = primitive_in(C, 0);
                out.push_back({h, 1});
                fcur = *exact_div(fcur, h);
                std::vector<DPoly> keep;
                for (size_t i = 0; i < r; ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(lifted[i]);
                lifted = std::move(keep);
                found = true;
                break;
            }
            // next combination
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && idx[i] == r - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++k;
    }
    if (fcur.deg(0) > 0) out.push_back({fcur, 1});
    return out;
}

FList Factorer::core(const DPoly& f, int X) {
    const int nv = f.nvars();
    bool uni = true;
    for (int v = 0; v < nv; ++v)
        if (v != X && f.deg(v) > 0) uni = false;
    FList out;
    if (uni) {
        auto uf = uni_factor(f.F(), f.to_upoly(X));
        for (auto& [g, m] : uf.factors) out.push_back({DPoly::from_upoly(f.field(), nv, X, g), m});
        return out;
    }
    if (f.deg(X) == 1) {
        out.push_back({f, 1});
        return out;
    }
    DPoly g = f.swapped(0, X);
    std::vector<Fe> pt;
    UPoly image;
    if (!find_point(g, pt, image)) return core_extension(f, X);
    auto uf = uni_factor(f.F(), image);
    if (uf.factors.size() == 1) {
        out.push_back({f, 1});
        return out;
    }
    std::vector<UPoly> ufac;
    for (auto& [u, m] : uf.factors) ufac.push_back(u);
    DPoly gs = g;
    for (int v = 1; v < nv; ++v)
        if (pt[v]) gs = gs.taylor_shift(v, pt[v]);
    for (auto& [h, m] : lift_and_recombine(gs, ufac)) {
        DPoly hb = h;
        for (int v = 1; v < nv; ++v)
            if (pt[v]) hb = hb.taylor_shift(v, f.F().neg(pt[v]));
        out.push_back({hb.swapped(0, X), 1});
    }
    return out;
}

FList Factorer::core_extension(const DPoly& f, int X) {
    const Field& K = f.F();
    std::uint64_t tdeg = 0;
    for (int v = 0; v < f.nvars(); ++v) tdeg += static_cast<std::uint64_t>(std::max(0, f.deg(v)));
    std::uint64_t target = std::max<std::uint64_t>(K.size() + 1, 32 * tdeg * tdeg + 64);
    if (K.size() >= kMaxExtensionSize / 2)
        fail(ErrorKind::LiftBudgetExceeded, "no good evaluation point within budget");
    target = std::min<std::uint64_t>(target, kMaxExtensionSize);
    WorkingField W = working_extension(f.field(), target);
    DPoly fe = map_field(f, W.emb);
    FList ext = core(fe, X);
    const Field& E = *W.E;
    const std::uint64_t q = K.size();
    auto sigma = [&](const DPoly& h) {
        DPoly r = h;
        for (auto& c : r.data()) c = E.pow(c, q);
        return r.canonical();
    };
    std::vector<bool> used(ext.size(), false);
    FList out;
    for (size_t i = 0; i < ext.size(); ++i) {
        if (used[i]) continue;
        DPoly prod = ext[i].first.canonical();
        used[i] = true;
        DPoly cur = sigma(prod);
        int guard = 0;
        while (!(cur == ext[i].first.canonical())) {
            bool hit = false;
            for (size_t j = 0; j < ext.size(); ++j)
                if (!used[j] && ext[j].first.canonical() == cur) {
                    used[j] = true;
                    hit = true;
                    break;
                }
            if (!hit) fail(ErrorKind::InternalError, "Frobenius orbit incomplete");
            prod = prod * cur;
            cur = sigma(cur);
            if (++guard > 64) fail(ErrorKind::InternalError, "Frobenius orbit too long");
        }
        auto back = pull_field(prod.canonical(), W.emb);
        if (!back) fail(ErrorKind::InternalError, "orbit product not over the base field");
        out.push_back({*back, 1});
    }
    return out;
}

// f = x^mins * rest
DPoly strip_monomial_dense(const DPoly& f, std::vector<int>& mins) {
    const int nv = f.nvars();
    mins.assign(nv, 1 << 30);
    const auto& ext = f.ext();
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < f.data().size(); ++i) {
        if (f.data()[i])
            for (int v = 0; v < nv; ++v) mins[v] = std::min(mins[v], e[v]);
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext[v]) break;
            e[v] = 0;
        }
    }
    bool any = false;
    std::vector<int> ne(nv);
    for (int v = 0; v < nv; ++v) {
        if (mins[v] >= (1 << 30)) mins[v] = 0;
        any |= mins[v] > 0;
        ne[v] = ext[v] - mins[v];
    }
    if (!any) return f;
    DPoly r(f.field(), ne);
    std::fill(e.begin(), e.end(), 0);
    for (size_t i = 0; i < r.data().size(); ++i) {
        std::vector<int> src(nv);
        for (int v = 0; v < nv; ++v) src[v] = e[v] + mins[v];
        r.data()[i] = f.at(src);
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ne[v]) break;
            e[v] = 0;
        }
    }
    r.normalize();
    return r;
}

bool dfactor_less(const DPoly& a, const DPoly& b) {
    SparsePoly sa = a.to_sparse(), sb = b.to_sparse();
    int c = grevlex_cmp(sa.lm(), sb.lm());
    if (c != 0) return c < 0;
    return sa < sb;
}

}  // namespace

DFactorization factor_dense(const DPoly& f, const FactorConfig& cfg) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factorization of zero");
    int active = 0;
    for (int v = 0; v < f.nvars(); ++v) active += f.deg(v) > 0;
    if (active > cfg.max_vars) fail(ErrorKind::LiftBudgetExceeded, "too many variables for dense factorization");
    DFactorization res;
    res.unit = f.grevlex_lc();
    std::vector<int> mins;
    DPoly rest = strip_monomial_dense(f, mins);
    Factorer fac(cfg);
    FList L = fac.rec(rest);
    for (int v = 0; v < f.nvars(); ++v)
        if (mins[v] > 0) merge_factor(L, DPoly::var(f.field(), f.nvars(), v), mins[v]);
    std::sort(L.begin(), L.end(), [](auto& a, auto& b) { return dfactor_less(a.first, b.first); });
    res.factors = std::move(L);
    DPoly chk = DPoly::constant(f.field(), f.nvars(), res.unit);
    for (auto& [g, m] : res.factors) chk = chk * pow(g, static_cast<unsigned>(m));
    if (chk != f) fail(ErrorKind::InternalError, "factorization remultiplication failed");
    return res;
}

// ---------------------------------------------------------------- sparse front ends

SparsePoly gcd_full(const SparsePoly& f, const SparsePoly& g) {
    if (f.nvars() != g.nvars()) fail(ErrorKind::ArityMismatch, "gcd of polynomials with different arity");
    DPoly r = gcd(DPoly::from_sparse(f), DPoly::from_sparse(g));
    return canonical(r.to_sparse());
}

SparsePoly gcd_multi(const SparsePoly& f, const SparsePoly& g, int i) {
    if (f.is_zero() && g.is_zero()) fail(ErrorKind::ZeroPolynomial, "gcd of two zero polynomials");
    DPoly r = gcd(DPoly::from_sparse(f), DPoly::from_sparse(g));
    if (r.deg(i) <= 0) return SparsePoly::constant(f.field(), f.nvars(), 1);
    return canonical(primitive_in(r, i).to_sparse());
}

std::pair<SparsePoly, SparsePoly> content_primitive(const SparsePoly& f, int i) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "content of zero");
    DPoly d = DPoly::from_sparse(f);
    DPoly c = content_in(d, i);
    DPoly p = *exact_div(d, c);
    return {c.to_sparse(), p.to_sparse()};
}

std::vector<std::pair<SparsePoly, int>> squarefree_decomp(const SparsePoly& f0, int i) {
    if (f0.is_zero() || f0.individual_degree(i) < 1)
        fail(ErrorKind::ConstantInVar, "squarefree decomposition needs positive degree");
    std::vector<std::pair<SparsePoly, int>> out;
    std::function<void(const DPoly&, int)> run = [&](const DPoly& f, int mult) {
        DPoly c = gcd(f, f.derivative(i));
        DPoly w = *exact_div(f, c);
        int k = 1;
        while (w.deg(i) > 0) {
            DPoly y = gcd(w, c);
            DPoly z = *exact_div(w, y);
            if (z.deg(i) > 0) out.push_back({canonical(primitive_in(z, i).to_sparse()), k * mult});
            ++k;
            w = std::move(y);
            c = *exact_div(c, w);
        }
        if (c.deg(i) > 0) {
            if (c.is_pth_power()) {
                run(c.pth_root(), mult * static_cast<int>(f.F().p()));
            } else {
                // not a p-th power over the coefficient field: reported as one part
                out.push_back({canonical(primitive_in(c, i).to_sparse()), mult});
            }
        }
    };
    run(primitive_in(DPoly::from_sparse(f0), i), 1);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

Factorization multi_factor(const SparsePoly& f, const FactorConfig& cfg) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factorization of zero");
    if (static_cast<int>(f.support().size()) > cfg.max_vars)
        fail(ErrorKind::LiftBudgetExceeded, "too many variables for dense factorization");
    DFactorization d = factor_dense(DPoly::from_sparse(f), cfg);
    Factorization r;
    r.unit = d.unit;
    for (auto& [g, m] : d.factors) r.factors.push_back({g.to_sparse(), m});
    if (expand(r, f.field(), f.nvars()) != f) fail(ErrorKind::InternalError, "factorization remultiplication failed");
    return r;
}

SparsePoly expand(const Factorization& fz, const FieldPtr& F, int n) {
    SparsePoly r = SparsePoly::constant(F, n, fz.unit);
    for (auto& [g, m] : fz.factors) r = r * pow(g, static_cast<unsigned>(m));
    return r;
}

}  // namespace sf
