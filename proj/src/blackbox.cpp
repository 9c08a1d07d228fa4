#include "sparsefactor/blackbox.hpp"

#include <algorithm>
#include <sstream>

#include "sparsefactor/errors.hpp"
#include "sparsefactor/gen.hpp"
#include "sparsefactor/upoly.hpp"

namespace sf {

BlackBox::BlackBox(FieldPtr F, int n, int d, int s, int ell, std::vector<int> degs, int total)
    : F_(std::move(F)), n_(n), d_(d), s_(s), ell_(ell), degs_(std::move(degs)), total_(total) {}

Fe BlackBox::query(const std::vector<Fe>& point) const { return query(Embedding::identity(F_), point); }

Fe BlackBox::query(const Embedding& emb, const std::vector<Fe>& point) const {
    if (static_cast<int>(point.size()) != n_) fail(ErrorKind::ArityMismatch, "query point has wrong length");
    if (self_counted()) charge(1);
    return eval(emb, point);
}

// ---- explicit

ExplicitBox::ExplicitBox(SparsePoly f, int d, int s)
    : BlackBox(f.field(), f.nvars(), d >= 0 ? d : std::max(1, f.max_individual_degree()),
               s >= 0 ? s : static_cast<int>(std::max<size_t>(1, f.sparsity())), 1, {}, 0),
      f_(std::move(f)) {
    Mono dg = f_.is_zero() ? Mono(n_, 0) : f_.degrees();
    degs_.assign(dg.begin(), dg.end());
    total_ = f_.is_zero() ? 0 : f_.total_degree();
}

std::string ExplicitBox::describe() const { return "explicit " + f_.to_string(); }

Fe ExplicitBox::eval(const Embedding& emb, const std::vector<Fe>& pt) const {
    if (emb.to()->same(*F_)) return f_.eval(pt);
    const Field& E = *emb.to();
    Fe acc = 0;
    for (auto& t : f_.terms()) {
        Fe v = emb.map(t.c);
        for (int i = 0; i < n_ && v != 0; ++i)
            if (t.e[i]) v = E.mul(v, E.pow(pt[i], t.e[i]));
        acc = E.add(acc, v);
    }
    return acc;
}

// ---- product

namespace {

std::vector<int> sum_degs(const std::vector<BoxPtr>& fs, int n) {
    std::vector<int> d(n, 0);
    for (auto& f : fs)
        for (int i = 0; i < n; ++i) d[i] += f->deg_bound(i);
    return d;
}

int sum_total(const std::vector<BoxPtr>& fs) {
    int t = 0;
    for (auto& f : fs) t += f->total_deg_bound();
    return t;
}

const FieldPtr& first_field(const std::vector<BoxPtr>& fs) {
    if (fs.empty()) fail(ErrorKind::UsageError, "empty product");
    return fs[0]->field();
}

}  // namespace

ProductBox::ProductBox(std::vector<BoxPtr> factors, int d, int s)
    : BlackBox(first_field(factors), factors[0]->nvars(), d, s, static_cast<int>(factors.size()),
               sum_degs(factors, factors[0]->nvars()), sum_total(factors)),
      fs_(std::move(factors)) {
    for (auto& f : fs_)
        if (f->nvars() != n_) fail(ErrorKind::ArityMismatch, "product factors differ in arity");
}

std::string ProductBox::describe() const {
    std::ostringstream os;
    os << "product of " << fs_.size();
    return os.str();
}

Fe ProductBox::eval(const Embedding& emb, const std::vector<Fe>& pt) const {
    const Field& E = *emb.to();
    Fe v = 1;
    for (auto& f : fs_) {
        v = E.mul(v, f->query(emb, pt));
        if (v == 0) break;
    }
    return v;
}

// ---- derived

DerivedBox::DerivedBox(BoxPtr parent, std::string what, std::vector<int> degs, int total, Fn fn)
    : BlackBox(parent->field(), parent->nvars(), parent->d(), parent->s(), parent->ell(), std::move(degs), total),
      parent_(std::move(parent)), what_(std::move(what)), fn_(std::move(fn)) {}

Fe DerivedBox::eval(const Embedding& emb, const std::vector<Fe>& pt) const {
    Sub sub = [&](const std::vector<Fe>& p) {
        charge(1);
        return parent_->query(emb, p);
    };
    return fn_(emb, pt, sub);
}

BoxPtr make_explicit(const SparsePoly& f, int d, int s) { return std::make_shared<ExplicitBox>(f, d, s); }

BoxPtr make_product(const std::vector<SparsePoly>& fs, int d, int s) {
    std::vector<BoxPtr> bs;
    for (auto& f : fs) bs.push_back(make_explicit(f, d, s));
    return make_product(std::move(bs), d, s);
}

BoxPtr make_product(std::vector<BoxPtr> fs, int d, int s) { return std::make_shared<ProductBox>(std::move(fs), d, s); }

// ---- derived constructions

namespace {

// Coefficients of t -> sub(point with coordinate i = t), degree <= D.
UPoly line_coeffs(const Field& E, const DerivedBox::Sub& sub, std::vector<Fe> pt, int i, int D) {
    if (E.size() < static_cast<std::uint64_t>(D) + 1)
        fail(ErrorKind::FieldTooSmall, "query field too small for interpolation along a variable");
    std::vector<Fe> xs(D + 1), ys(D + 1);
    for (int j = 0; j <= D; ++j) {
        xs[j] = E.element(j);
        pt[i] = xs[j];
        ys[j] = sub(pt);
    }
    return up::interpolate(E, xs, ys);
}

}  // namespace

BoxPtr normalize_access(const BoxPtr& b, int x0) {
    const int n = b->nvars();
    if (x0 < 0 || x0 >= n) fail(ErrorKind::ArityMismatch, "normalization variable out of range");
    const int D0 = b->deg_bound(x0);
    std::vector<int> degs(n);
    for (int t = 0; t < n; ++t) degs[t] = t == x0 ? D0 : D0 * b->deg_bound(t);
    int total = D0 * (b->total_deg_bound() + 1);
    return std::make_shared<DerivedBox>(
        b, "normalized", degs, total,
        [x0, D0](const Embedding& emb, const std::vector<Fe>& pt, const DerivedBox::Sub& sub) -> Fe {
            const Field& E = *emb.to();
            UPoly c = line_coeffs(E, sub, pt, x0, D0);
            if (up::deg(c) > D0) fail(ErrorKind::InternalError, "inconsistent degree along the normalization variable");
            Fe y = pt[x0];
            Fe f0 = c.empty() ? 0 : c[0];
            Fe acc = 1, f0pow = 1, ypow = 1;
            for (size_t i = 1; i < c.size(); ++i) {
                ypow = E.mul(ypow, y);
                acc = E.add(acc, E.mul(c[i], E.mul(f0pow, ypow)));
                f0pow = E.mul(f0pow, f0);
            }
            return acc;
        });
}

BoxPtr restrict_zero(const BoxPtr& b, int i) {
    std::vector<int> degs = b->deg_bounds();
    degs[i] = 0;
    return std::make_shared<DerivedBox>(b, "restricted", degs, b->total_deg_bound(),
                                        [i](const Embedding&, const std::vector<Fe>& pt, const DerivedBox::Sub& sub) {
                                            std::vector<Fe> p = pt;
                                            p[i] = 0;
                                            return sub(p);
                                        });
}

BoxPtr divide_var_power(const BoxPtr& b, int i, int k) {
    if (k == 0) return b;
    std::vector<int> degs = b->deg_bounds();
    degs[i] = std::max(0, degs[i] - k);
    const int Di = b->deg_bound(i);
    return std::make_shared<DerivedBox>(
        b, "var power stripped", degs, std::max(0, b->total_deg_bound() - k),
        [i, k, Di](const Embedding& emb, const std::vector<Fe>& pt, const DerivedBox::Sub& sub) -> Fe {
            const Field& E = *emb.to();
            if (pt[i] != 0) return E.div(sub(pt), E.pow(pt[i], k));
            UPoly c = line_coeffs(E, sub, pt, i, Di);
            return static_cast<int>(c.size()) > k ? c[k] : 0;
        });
}

BoxPtr divide_monomial(const BoxPtr& b, const Mono& M) {
    const int n = b->nvars();
    int dm = 0;
    std::vector<int> degs = b->deg_bounds();
    for (int i = 0; i < n; ++i) {
        dm += static_cast<int>(M[i]);
        degs[i] = std::max(0, degs[i] - static_cast<int>(M[i]));
    }
    if (dm == 0) return b;
    const int T = std::max(0, b->total_deg_bound() - dm);
    return std::make_shared<DerivedBox>(
        b, "monomial stripped", degs, T,
        [M, n, T](const Embedding& emb, const std::vector<Fe>& pt, const DerivedBox::Sub& sub) -> Fe {
            const Field& E = *emb.to();
            auto mono_at = [&](const std::vector<Fe>& p) {
                Fe v = 1;
                for (int i = 0; i < n; ++i)
                    if (M[i]) v = E.mul(v, E.pow(p[i], M[i]));
                return v;
            };
            bool has_zero = false;
            for (int i = 0; i < n; ++i) has_zero |= pt[i] == 0;
            if (!has_zero) return E.div(sub(pt), mono_at(pt));
            // g(pt + (t,...,t)) is a polynomial of degree <= T in t; read t = 0
            std::vector<Fe> xs, ys;
            std::vector<Fe> p(n);
            for (std::uint64_t e = 1; e < E.size() && static_cast<int>(xs.size()) <= T; ++e) {
                Fe t = E.element(e);
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    p[i] = E.add(pt[i], t);
                    ok = p[i] != 0;
                }
                if (!ok) continue;
                xs.push_back(t);
                ys.push_back(E.div(sub(p), mono_at(p)));
            }
            if (static_cast<int>(xs.size()) <= T)
                fail(ErrorKind::FieldTooSmall, "not enough shift points for monomial stripping");
            return up::eval(E, up::interpolate(E, xs, ys), 0);
        });
}

Stripped strip_var_power(const BoxPtr& b, int i) {
    int cap = 1;
    for (int t = 0; t < b->nvars(); ++t) cap = std::max(cap, b->deg_bound(t));
    FaceEngine eng(b->field(), b->nvars(), b->d(), b->d(), cap);
    FaceSpec spec;
    spec.u = i;
    const Face& f = eng.face(spec);
    DPoly img = eng.compose(b, f);
    if (img.is_zero()) fail(ErrorKind::ZeroPolynomial, "stripping a zero blackbox");
    int k = 0;
    auto cs = img.coeffs_in(kFaceU);
    while (k < static_cast<int>(cs.size()) && cs[k].is_zero()) ++k;
    return {k, divide_var_power(b, i, k)};
}

StrippedMono strip_monomial(const BoxPtr& b) {
    const int n = b->nvars();
    Mono M(n, 0);
    for (int i = 0; i < n; ++i) M[i] = static_cast<std::uint32_t>(strip_var_power(b, i).k);
    return {M, divide_monomial(b, M)};
}

}  // namespace sf
