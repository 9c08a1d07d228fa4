#include "sparsefactor/dpoly.hpp"

#include <algorithm>

namespace sf {

// Invariant: every value returned by a public operation is normalized, so a
// nonzero polynomial has deg(v) == ext[v] - 1 and zero is ext = (1,...,1), c = {0}.

namespace {

std::vector<size_t> strides_of(const std::vector<int>& ext) {
    std::vector<size_t> s(ext.size());
    size_t acc = 1;
    for (size_t v = 0; v < ext.size(); ++v) {
        s[v] = acc;
        acc *= static_cast<size_t>(ext[v]);
    }
    return s;
}

size_t volume(const std::vector<int>& ext) {
    size_t acc = 1;
    for (int e : ext) {
        if (e <= 0) fail(ErrorKind::InternalError, "bad extent");
        acc *= static_cast<size_t>(e);
        if (acc > (size_t(1) << 31)) fail(ErrorKind::LiftBudgetExceeded, "dense polynomial too large");
    }
    return acc;
}

// Copies a's coefficients into a flat array laid out with the given extents
// (which must dominate a's extents).
std::vector<Fe> pack(const DPoly& a, const std::vector<int>& ext) {
    auto st = strides_of(ext);
    std::vector<Fe> out(volume(ext), 0);
    const auto& ae = a.ext();
    const int nv = a.nvars();
    std::vector<int> e(nv, 0);
    size_t pos = 0;
    const auto& c = a.data();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i]) out[pos] = c[i];
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ae[v]) {
                pos += st[v];
                break;
            }
            pos -= st[v] * static_cast<size_t>(ae[v] - 1);
            e[v] = 0;
        }
    }
    return out;
}

void check_compat(const DPoly& a, const DPoly& b) {
    if (a.nvars() != b.nvars()) fail(ErrorKind::ArityMismatch, "dense polynomials with different variable counts");
}

}  // namespace

DPoly::DPoly(FieldPtr F, int nv) : F_(std::move(F)), ext_(nv, 1), c_(1, 0) {}

DPoly::DPoly(FieldPtr F, std::vector<int> ext) : F_(std::move(F)), ext_(std::move(ext)) { c_.assign(volume(ext_), 0); }

DPoly DPoly::constant(FieldPtr F, int nv, Fe c) {
    DPoly r(std::move(F), nv);
    r.c_[0] = c;
    return r;
}

DPoly DPoly::var(FieldPtr F, int nv, int v, int power) {
    std::vector<int> ext(nv, 1);
    ext[v] = power + 1;
    DPoly r(std::move(F), ext);
    r.c_.back() = 1;
    return r;
}

DPoly DPoly::from_sparse(const SparsePoly& f) {
    const int nv = f.nvars();
    if (f.is_zero()) return DPoly(f.field(), nv);
    Mono d = f.degrees();
    std::vector<int> ext(nv);
    for (int v = 0; v < nv; ++v) ext[v] = static_cast<int>(d[v]) + 1;
    DPoly r(f.field(), ext);
    auto st = strides_of(ext);
    for (auto& t : f.terms()) {
        size_t pos = 0;
        for (int v = 0; v < nv; ++v) pos += st[v] * t.e[v];
        r.c_[pos] = t.c;
    }
    return r;
}

DPoly DPoly::from_upoly(FieldPtr F, int nv, int v, const UPoly& u) {
    if (u.empty()) return DPoly(std::move(F), nv);
    std::vector<int> ext(nv, 1);
    ext[v] = static_cast<int>(u.size());
    DPoly r(std::move(F), ext);
    r.c_ = u;
    r.normalize();
    return r;
}

SparsePoly DPoly::to_sparse() const {
    const int nv = nvars();
    std::vector<Term> ts;
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) {
            Mono m(nv);
            for (int v = 0; v < nv; ++v) m[v] = static_cast<std::uint32_t>(e[v]);
            ts.push_back({std::move(m), c_[i]});
        }
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) break;
            e[v] = 0;
        }
    }
    return SparsePoly::from_terms(F_, nv, std::move(ts));
}

UPoly DPoly::to_upoly(int v) const {
    for (int w = 0; w < nvars(); ++w)
        if (w != v && ext_[w] != 1) fail(ErrorKind::InternalError, "not univariate");
    UPoly r = c_;
    up::trim(r);
    return r;
}

bool DPoly::is_zero() const {
    for (Fe x : c_)
        if (x) return false;
    return true;
}

bool DPoly::is_constant() const {
    for (int e : ext_)
        if (e != 1) return false;
    return true;
}

int DPoly::deg(int v) const {
    if (c_.size() == 1 && c_[0] == 0) return -1;
    return ext_[v] - 1;
}

int DPoly::total_degree() const {
    if (is_zero()) return -1;
    const int nv = nvars();
    std::vector<int> e(nv, 0);
    int best = 0, cur = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) best = std::max(best, cur);
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) {
                ++cur;
                break;
            }
            cur -= ext_[v] - 1;
            e[v] = 0;
        }
    }
    return best;
}

size_t DPoly::index(const std::vector<int>& e) const {
    size_t pos = 0, acc = 1;
    for (int v = 0; v < nvars(); ++v) {
        pos += acc * static_cast<size_t>(e[v]);
        acc *= static_cast<size_t>(ext_[v]);
    }
    return pos;
}

Fe DPoly::at(const std::vector<int>& e) const {
    for (int v = 0; v < nvars(); ++v)
        if (e[v] < 0 || e[v] >= ext_[v]) return 0;
    return c_[index(e)];
}

void DPoly::set(const std::vector<int>& e, Fe val) {
    bool grow = false;
    std::vector<int> ne = ext_;
    for (int v = 0; v < nvars(); ++v)
        if (e[v] >= ne[v]) {
            ne[v] = e[v] + 1;
            grow = true;
        }
    if (grow) *this = reshaped(ne);
    c_[index(e)] = val;
}

size_t DPoly::nterms() const {
    size_t k = 0;
    for (Fe x : c_) k += x != 0;
    return k;
}

void DPoly::normalize() {
    const int nv = nvars();
    std::vector<int> hi(nv, -1);
    std::vector<int> e(nv, 0);
    bool any = false;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) {
            any = true;
            for (int v = 0; v < nv; ++v) hi[v] = std::max(hi[v], e[v]);
        }
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) break;
            e[v] = 0;
        }
    }
    if (!any) {
        ext_.assign(nv, 1);
        c_.assign(1, 0);
        return;
    }
    std::vector<int> ne(nv);
    bool same = true;
    for (int v = 0; v < nv; ++v) {
        ne[v] = hi[v] + 1;
        same &= ne[v] == ext_[v];
    }
    if (same) return;
    DPoly r(F_, ne);
    auto st = strides_of(ext_);
    std::vector<int> f(nv, 0);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        size_t pos = 0;
        for (int v = 0; v < nv; ++v) pos += st[v] * static_cast<size_t>(f[v]);
        r.c_[i] = c_[pos];
        for (int v = 0; v < nv; ++v) {
            if (++f[v] < ne[v]) break;
            f[v] = 0;
        }
    }
    ext_ = std::move(ne);
    c_ = std::move(r.c_);
}

DPoly DPoly::reshaped(const std::vector<int>& ext) const {
    DPoly r(F_, ext);
    r.c_ = pack(*this, ext);
    return r;
}

bool DPoly::operator==(const DPoly& o) const { return ext_ == o.ext_ && c_ == o.c_; }

std::vector<DPoly> DPoly::coeffs_in(int v) const {
    const int nv = nvars();
    std::vector<int> se = ext_;
    se[v] = 1;
    std::vector<DPoly> out;
    auto st = strides_of(ext_);
    for (int j = 0; j < ext_[v]; ++j) {
        DPoly s(F_, se);
        std::vector<int> e(nv, 0);
        for (size_t i = 0; i < s.c_.size(); ++i) {
            size_t pos = st[v] * static_cast<size_t>(j);
            for (int w = 0; w < nv; ++w) pos += st[w] * static_cast<size_t>(e[w]);
            s.c_[i] = c_[pos];
            for (int w = 0; w < nv; ++w) {
                if (++e[w] < se[w]) break;
                e[w] = 0;
            }
        }
        s.normalize();
        out.push_back(std::move(s));
    }
    return out;
}

DPoly DPoly::from_coeffs(const std::vector<DPoly>& cs, int v, FieldPtr F, int nv) {
    std::vector<int> ext(nv, 1);
    ext[v] = std::max<int>(1, static_cast<int>(cs.size()));
    for (auto& c : cs)
        for (int w = 0; w < nv; ++w)
            if (w != v) ext[w] = std::max(ext[w], c.ext_[w]);
    DPoly r(F, ext);
    auto st = strides_of(ext);
    for (size_t j = 0; j < cs.size(); ++j) {
        const DPoly& c = cs[j];
        std::vector<int> e(nv, 0);
        for (size_t i = 0; i < c.c_.size(); ++i) {
            if (c.c_[i]) {
                size_t pos = st[v] * j;
                for (int w = 0; w < nv; ++w) pos += st[w] * static_cast<size_t>(e[w]);
                r.c_[pos] = c.c_[i];
            }
            for (int w = 0; w < nv; ++w) {
                if (++e[w] < c.ext_[w]) break;
                e[w] = 0;
            }
        }
    }
    r.normalize();
    return r;
}

DPoly DPoly::lc_in(int v) const {
    auto cs = coeffs_in(v);
    return cs.back();
}

DPoly DPoly::eval_var(int v, Fe a) const {
    auto cs = coeffs_in(v);
    DPoly r(F_, nvars());
    for (size_t j = cs.size(); j-- > 0;) r = scale(r, a) + cs[j];
    return r;
}

DPoly DPoly::derivative(int v) const {
    auto cs = coeffs_in(v);
    std::vector<DPoly> ds;
    for (size_t j = 1; j < cs.size(); ++j) ds.push_back(scale(cs[j], F_->from_int(static_cast<long long>(j % F_->p()))));
    if (ds.empty()) return DPoly(F_, nvars());
    return from_coeffs(ds, v, F_, nvars());
}

DPoly DPoly::taylor_shift(int v, Fe a) const {
    if (a == 0 || ext_[v] <= 1) return *this;
    auto cs = coeffs_in(v);
    const size_t n = cs.size();
    // Horner-style repeated synthetic division
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 1; j > i; --j) cs[j - 1] = cs[j - 1] + scale(cs[j], a);
    return from_coeffs(cs, v, F_, nvars());
}

bool DPoly::is_pth_power() const {
    const int nv = nvars();
    const std::uint64_t p = F_->p();
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i])
            for (int v = 0; v < nv; ++v)
                if (static_cast<std::uint64_t>(e[v]) % p) return false;
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) break;
            e[v] = 0;
        }
    }
    return true;
}

DPoly DPoly::pth_root() const {
    const int nv = nvars();
    const int p = static_cast<int>(F_->p());
    std::vector<int> ne(nv);
    for (int v = 0; v < nv; ++v) ne[v] = (ext_[v] - 1) / p + 1;
    DPoly r(F_, ne);
    auto st = strides_of(ext_);
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        size_t pos = 0;
        for (int v = 0; v < nv; ++v) pos += st[v] * static_cast<size_t>(e[v]) * p;
        r.c_[i] = F_->pth_root(c_[pos]);
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ne[v]) break;
            e[v] = 0;
        }
    }
    r.normalize();
    return r;
}

DPoly DPoly::inflate(int v, int k) const {
    auto cs = coeffs_in(v);
    std::vector<DPoly> out((cs.size() - 1) * k + 1, DPoly(F_, nvars()));
    for (size_t j = 0; j < cs.size(); ++j) out[j * k] = cs[j];
    return from_coeffs(out, v, F_, nvars());
}

DPoly DPoly::truncated(const std::vector<int>& lim) const {
    const int nv = nvars();
    std::vector<int> ne(nv);
    bool same = true;
    for (int v = 0; v < nv; ++v) {
        ne[v] = std::min(ext_[v], std::max(1, lim[v]));
        same &= ne[v] == ext_[v];
    }
    if (same) return *this;
    DPoly r(F_, ne);
    auto st = strides_of(ext_);
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        size_t pos = 0;
        bool ok = true;
        for (int v = 0; v < nv; ++v) {
            pos += st[v] * static_cast<size_t>(e[v]);
            ok &= e[v] < lim[v];
        }
        r.c_[i] = ok ? c_[pos] : 0;
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ne[v]) break;
            e[v] = 0;
        }
    }
    r.normalize();
    return r;
}

DPoly DPoly::swapped(int a, int b) const {
    if (a == b) return *this;
    const int nv = nvars();
    std::vector<int> ne = ext_;
    std::swap(ne[a], ne[b]);
    DPoly r(F_, ne);
    auto st = strides_of(ne);
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) {
            std::vector<int> f = e;
            std::swap(f[a], f[b]);
            size_t pos = 0;
            for (int v = 0; v < nv; ++v) pos += st[v] * static_cast<size_t>(f[v]);
            r.c_[pos] = c_[i];
        }
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) break;
            e[v] = 0;
        }
    }
    return r;
}

std::vector<int> DPoly::grevlex_lm() const {
    const int nv = nvars();
    std::vector<int> best;
    Mono bm;
    std::vector<int> e(nv, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) {
            Mono m(e.begin(), e.end());
            if (best.empty() || grevlex_cmp(m, bm) > 0) {
                best = e;
                bm = m;
            }
        }
        for (int v = 0; v < nv; ++v) {
            if (++e[v] < ext_[v]) break;
            e[v] = 0;
        }
    }
    return best;
}

Fe DPoly::grevlex_lc() const {
    if (is_zero()) return 0;
    return at(grevlex_lm());
}

DPoly DPoly::canonical(Fe* unit) const {
    Fe c = grevlex_lc();
    if (unit) *unit = c;
    if (c == 0 || c == 1) return *this;
    return scale(*this, F_->inv(c));
}

Fe DPoly::eval(const std::vector<Fe>& point) const {
    const int nv = nvars();
    if (static_cast<int>(point.size()) != nv) fail(ErrorKind::ArityMismatch, "evaluation point has wrong length");
    // nested Horner from the slowest variable down
    std::vector<Fe> cur = c_;
    size_t len = c_.size();
    for (int v = 0; v < nv; ++v) {
        size_t k = static_cast<size_t>(ext_[v]);
        size_t groups = len / k;
        std::vector<Fe> nxt(groups);
        for (size_t g = 0; g < groups; ++g) {
            Fe acc = 0;
            for (size_t j = k; j-- > 0;) acc = F_->add(F_->mul(acc, point[v]), cur[g * k + j]);
            nxt[g] = acc;
        }
        cur = std::move(nxt);
        len = groups;
    }
    return cur[0];
}

DPoly operator+(const DPoly& a, const DPoly& b) {
    check_compat(a, b);
    const int nv = a.nvars();
    std::vector<int> ext(nv);
    for (int v = 0; v < nv; ++v) ext[v] = std::max(a.ext()[v], b.ext()[v]);
    DPoly r(a.field() ? a.field() : b.field(), ext);
    auto pa = a.ext() == ext ? a.data() : pack(a, ext);
    auto pb = b.ext() == ext ? b.data() : pack(b, ext);
    const Field& F = r.F();
    for (size_t i = 0; i < pa.size(); ++i) r.data()[i] = F.add(pa[i], pb[i]);
    r.normalize();
    return r;
}

DPoly operator-(const DPoly& a, const DPoly& b) { return a + scale(b, b.F().neg(1)); }

DPoly scale(const DPoly& a, Fe c) {
    DPoly r = a;
    if (c == 1) return r;
    for (auto& x : r.data()) x = a.F().mul(x, c);
    r.normalize();
    return r;
}

DPoly operator*(const DPoly& a, const DPoly& b) {
    check_compat(a, b);
    const int nv = a.nvars();
    if (a.is_zero() || b.is_zero()) return DPoly(a.field(), nv);
    if (a.is_constant()) return scale(b, a.constant_value());
    if (b.is_constant()) return scale(a, b.constant_value());
    std::vector<int> ext(nv);
    for (int v = 0; v < nv; ++v) ext[v] = a.ext()[v] + b.ext()[v] - 1;
    auto pa = pack(a, ext);
    auto pb = pack(b, ext);
    up::trim(pa);
    up::trim(pb);
    std::vector<size_t> ia, ib;
    for (size_t i = 0; i < pa.size(); ++i)
        if (pa[i]) ia.push_back(i);
    for (size_t i = 0; i < pb.size(); ++i)
        if (pb[i]) ib.push_back(i);
    DPoly r(a.field(), ext);
    const double L = static_cast<double>(pa.size() + pb.size());
    if (static_cast<double>(ia.size()) * static_cast<double>(ib.size()) < 24.0 * L) {
        const Field& F = a.F();
        auto& rc = r.data();
        for (size_t i : ia)
            for (size_t j : ib) rc[i + j] = F.add(rc[i + j], F.mul(pa[i], pb[j]));
    } else {
        UPoly prod = up::mul(a.F(), pa, pb);
        std::copy(prod.begin(), prod.end(), r.data().begin());
    }
    r.normalize();
    return r;
}

DPoly pow(const DPoly& a, unsigned e) {
    DPoly r = DPoly::constant(a.field(), a.nvars(), 1);
    DPoly b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

DPoly mul_trunc(const DPoly& a, const DPoly& b, const std::vector<int>& lim) {
    return (a.truncated(lim) * b.truncated(lim)).truncated(lim);
}

std::optional<DPoly> exact_div(const DPoly& a, const DPoly& b) {
    check_compat(a, b);
    if (b.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
    const int nv = a.nvars();
    if (a.is_zero()) return DPoly(a.field(), nv);
    for (int v = 0; v < nv; ++v)
        if (b.ext()[v] > a.ext()[v]) return std::nullopt;
    if (b.is_constant()) return scale(a, a.F().inv(b.constant_value()));
    const std::vector<int>& ext = a.ext();
    UPoly pa = a.data();
    up::trim(pa);
    UPoly pb = pack(b, ext);
    up::trim(pb);
    UPoly q, r;
    up::divmod(a.F(), pa, pb, q, r);
    if (!r.empty()) return std::nullopt;
    DPoly Q(a.field(), ext);
    std::copy(q.begin(), q.end(), Q.data().begin());
    Q.normalize();
    for (int v = 0; v < nv; ++v)
        if (Q.ext()[v] + b.ext()[v] - 1 != a.ext()[v]) return std::nullopt;
    if (Q * b != a) return std::nullopt;
    return Q;
}

bool divides(const DPoly& b, const DPoly& a) { return exact_div(a, b).has_value(); }

int divisibility_power(const DPoly& b, DPoly a) {
    if (b.is_constant()) fail(ErrorKind::InternalError, "divisibility power of a constant");
    if (a.is_zero()) fail(ErrorKind::ZeroPolynomial, "divisibility power in zero");
    int k = 0;
    while (true) {
        auto q = exact_div(a, b);
        if (!q) return k;
        a = std::move(*q);
        ++k;
    }
}

DPoly map_field(const DPoly& a, const Embedding& emb) {
    DPoly r(emb.to(), a.ext());
    for (size_t i = 0; i < a.data().size(); ++i) r.data()[i] = emb.map(a.data()[i]);
    return r;
}

std::optional<DPoly> pull_field(const DPoly& a, const Embedding& emb) {
    DPoly r(emb.from(), a.ext());
    for (size_t i = 0; i < a.data().size(); ++i) {
        auto v = emb.pull(a.data()[i]);
        if (!v) return std::nullopt;
        r.data()[i] = *v;
    }
    return r;
}

}  // namespace sf
