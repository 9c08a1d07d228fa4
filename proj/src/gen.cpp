#include "sparsefactor/gen.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <boost/multiprecision/cpp_int.hpp>
#include <thread>
#include <tuple>

#include "sparsefactor/errors.hpp"
#include "sparsefactor/upoly.hpp"

namespace sf {

using boost::multiprecision::cpp_int;

// ---- table

namespace {

const char* const kTaskNames[] = {"SPARSE_INTERP", "DIVISOR_ENUM",   "PRIMDIV_COPRIME", "CHAR0_COPRIME",
                                  "DELTA_K",       "MULTIQUAD",      "RATIONAL_INTERP", "RATIONAL_INTERP_MULTI"};

cpp_int fact(int n) {
    cpp_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

cpp_int ipow(cpp_int b, long e) {
    cpp_int r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

cpp_int primdiv_row(const MInputs& in) {
    const long d = in.d;
    cpp_int v = cpp_int(in.n) * (8 * d * d * d * d) * (fact(static_cast<int>(4 * d * d)) * ipow(in.s, 8 * d * d * d));
    return v * v;
}

cpp_int char0_row(const MInputs& in) {
    const long d = in.d;
    cpp_int v = cpp_int(in.n) * (8 * d * d) * (fact(static_cast<int>(4 * d)) * ipow(in.s, 8 * d));
    return v * v;
}

cpp_int table(Task t, const MInputs& in) {
    if (in.n < 1 || in.s < 1 || in.d < 1 || in.k < 1 || in.ell < 1 || in.D < 1)
        fail(ErrorKind::UsageError, "table sizes must be at least 1");
    const bool large = in.cc == CharClass::LARGE;
    switch (t) {
    case Task::SPARSE_INTERP: {
        cpp_int v = cpp_int(in.n) * in.d * in.s;
        return v * v;
    }
    case Task::DIVISOR_ENUM: {
        cpp_int v = cpp_int(2) * in.n * in.s * in.d;
        return v * v;
    }
    case Task::PRIMDIV_COPRIME:
        return primdiv_row(in);
    case Task::CHAR0_COPRIME:
        return char0_row(in);
    case Task::DELTA_K: {
        const long d = in.d;
        cpp_int v = cpp_int(in.n + in.d) * (fact(in.d) * ipow(cpp_int(in.k) * in.s, d)) * (2 * d * d);
        return v * v;
    }
    case Task::MULTIQUAD:
    case Task::RATIONAL_INTERP:
        return large ? char0_row(in) : primdiv_row(in);
    case Task::RATIONAL_INTERP_MULTI:
        return (large ? char0_row(in) : primdiv_row(in)) * ipow(in.D, kMultiDExponent);
    }
    fail(ErrorKind::UsageError, "unknown task");
}

}  // namespace

const char* task_name(Task t) { return kTaskNames[static_cast<int>(t)]; }

std::optional<Task> task_from_name(const std::string& s) {
    for (int i = 0; i < 8; ++i)
        if (s == kTaskNames[i]) return static_cast<Task>(i);
    return std::nullopt;
}

std::string m_for_string(Task t, const MInputs& in) { return table(t, in).str(); }

std::uint64_t m_for(Task t, const MInputs& in) {
    cpp_int v = table(t, in);
    if (v > cpp_int((std::uint64_t(1) << 63) - 1))
        fail(ErrorKind::Overflow, std::string("m for ") + task_name(t) + " is " + v.str() + ", above 2^63-1");
    return static_cast<std::uint64_t>(v);
}

// ---- generator

std::uint64_t Generator::required_size(std::uint64_t m, int n, int d) {
    std::uint64_t q = next_prime_above(m);
    unsigned __int128 r = static_cast<unsigned __int128>(m) + 2u * static_cast<unsigned>(n) +
                          static_cast<unsigned __int128>(n) * static_cast<unsigned>(d) * q;
    if (r > ~std::uint64_t(0)) return ~std::uint64_t(0);
    return static_cast<std::uint64_t>(r);
}

Generator Generator::build(std::uint64_t m, int n, const FieldPtr& F, int d) {
    if (m < 1 || n < 1 || d < 1) fail(ErrorKind::UsageError, "generator sizes must be at least 1");
    std::uint64_t need = required_size(m, n, d);
    if (F->size() < need)
        fail(ErrorKind::FieldTooSmall, "generator needs a field with at least " + std::to_string(need) + " elements");
    Generator g;
    g.F_ = F;
    g.m_ = m;
    g.q_ = next_prime_above(m);
    g.n_ = n;
    g.d_ = d;
    g.sh_ = std::make_shared<Shared>();
    return g;
}

Generator Generator::revive(int i) const {
    if (i < 0 || i >= n_) fail(ErrorKind::ArityMismatch, "revived coordinate out of range");
    Generator g = *this;
    g.revived_ = i;
    return g;
}

const std::vector<Fe>& Generator::weights() const {
    std::call_once(sh_->once, [this] {
        const Field& F = *F_;
        std::vector<Fe> w(m_);
        if (F.k() == 1 && m_ < F.p()) {
            // nodes 0..m-1: w_i = (-1)^(m-1-i) / (i! (m-1-i)!)
            std::vector<Fe> fac(m_ + 1, 1);
            for (std::uint64_t i = 1; i <= m_; ++i) fac[i] = F.mul(fac[i - 1], F.from_int(static_cast<long long>(i)));
            for (std::uint64_t i = 0; i < m_; ++i) {
                Fe v = F.inv(F.mul(fac[i], fac[m_ - 1 - i]));
                w[i] = ((m_ - 1 - i) & 1) ? F.neg(v) : v;
            }
        } else {
            for (std::uint64_t i = 0; i < m_; ++i) {
                Fe prod = 1;
                for (std::uint64_t j = 0; j < m_; ++j)
                    if (j != i) prod = F.mul(prod, F.sub(alpha(i + 1), alpha(j + 1)));
                w[i] = F.inv(prod);
            }
        }
        sh_->wA = std::move(w);
    });
    return sh_->wA;
}

std::vector<Fe> Generator::lagrange_A(const Embedding& emb, Fe y) const {
    const Field& E = *emb.to();
    const auto& w = weights();
    std::vector<Fe> out(m_, 0);
    std::vector<Fe> diff(m_);
    for (std::uint64_t i = 0; i < m_; ++i) {
        diff[i] = E.sub(y, emb.map(alpha(i + 1)));
        if (diff[i] == 0) {
            out[i] = 1;
            return out;
        }
    }
    // batch inversion of the differences
    std::vector<Fe> pre(m_ + 1, 1);
    for (std::uint64_t i = 0; i < m_; ++i) pre[i + 1] = E.mul(pre[i], diff[i]);
    const Fe ell = pre[m_];
    Fe inv = E.inv(ell);
    for (std::uint64_t i = m_; i-- > 0;) {
        Fe di = E.mul(inv, pre[i]);
        inv = E.mul(inv, diff[i]);
        out[i] = E.mul(E.mul(ell, emb.map(w[i])), di);
    }
    return out;
}

Fe Generator::lagrange_BC(const Embedding& emb, int j, Fe z, bool use_c) const {
    const Field& E = *emb.to();
    auto node = [&](int t) { return emb.map(use_c ? gamma(t) : beta(t)); };
    Fe num = 1, den = 1;
    for (int t = 1; t <= n_; ++t) {
        if (t == j) continue;
        num = E.mul(num, E.sub(z, node(t)));
        den = E.mul(den, E.sub(node(j), node(t)));
    }
    return E.div(num, den);
}

std::vector<Fe> Generator::eval(const std::vector<Fe>& in) const { return eval(Embedding::identity(F_), in); }

std::vector<Fe> Generator::eval(const Embedding& emb, const std::vector<Fe>& in) const {
    if (static_cast<int>(in.size()) != arity()) fail(ErrorKind::ArityMismatch, "generator input has wrong length");
    const Field& E = *emb.to();
    const Fe x = in[0], y = in[1], z = in[2], w = in[3], u = in[4];
    // at a node alpha_k only A_k survives; this keeps huge m usable
    std::optional<std::uint64_t> node;
    if (auto yy = emb.pull(y); yy && *yy < m_) node = *yy + 1;
    std::vector<Fe> A;
    if (!node) A = lagrange_A(emb, y);
    std::vector<Fe> out(n_);
    for (int t = 1; t <= n_; ++t) {
        if (revived_ && *revived_ == t - 1) {
            out[t - 1] = u;
            continue;
        }
        Fe s = 0;
        if (node) {
            std::uint64_t e = 1;
            for (int r = 0; r < t; ++r) e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e) * *node) % q_);
            s = E.pow(x, e);
        }
        for (std::uint64_t i = 1; !node && i <= m_; ++i) {
            if (A[i - 1] == 0) continue;
            std::uint64_t e = 1;
            for (int r = 0; r < t; ++r) e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e) * i) % q_);
            s = E.add(s, E.mul(A[i - 1], E.pow(x, e)));
        }
        Fe factor = E.add(1, E.mul(lagrange_BC(emb, t, z, false), E.sub(w, 1)));
        Fe v = E.mul(s, factor);
        if (!revived_) v = E.add(v, E.mul(lagrange_BC(emb, t, in[5], true), u));
        out[t - 1] = v;
    }
    return out;
}

std::vector<Fe> eval_G(const Generator& g, const std::vector<Fe>& inputs) { return g.eval(inputs); }

// ---- grid interpolation

namespace {

template <class Fn>
void parallel_for(size_t n, Fn fn) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n < 2048 || hw == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned T = std::min<unsigned>(hw, 16);
    std::vector<std::thread> th;
    std::exception_ptr err;
    std::mutex emu;
    for (unsigned t = 0; t < T; ++t)
        th.emplace_back([&, t] {
            try {
                for (size_t i = t; i < n; i += T) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(emu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& x : th) x.join();
    if (err) std::rethrow_exception(err);
}

// Coefficients from values at the nodes enc(start), ..., enc(start+N-1).
class LineInterp {
public:
    LineInterp(FieldPtr E, std::uint64_t start, size_t N) : E_(std::move(E)), N_(N) {
        const Field& F = *E_;
        xs_.resize(N);
        for (size_t i = 0; i < N; ++i) xs_[i] = F.element(start + i);
        if (N > kMatrixLimit) return;
        UPoly ell = up::from_roots(F, xs_);
        UPoly der = up::deriv(F, ell);
        rows_.assign(N * N, 0);
        for (size_t i = 0; i < N; ++i) {
            Fe wi = F.inv(up::eval(F, der, xs_[i]));
            // ell / (x - x_i) by synthetic division
            Fe carry = 0;
            for (size_t c = N; c-- > 0;) {
                carry = F.add(ell[c + 1], F.mul(carry, xs_[i]));
                rows_[i * N + c] = F.mul(carry, wi);
            }
        }
    }

    UPoly operator()(const std::vector<Fe>& ys) const {
        const Field& F = *E_;
        if (rows_.empty()) return up::interpolate(F, xs_, ys);
        UPoly out(N_, 0);
        for (size_t i = 0; i < N_; ++i) {
            Fe y = ys[i];
            if (y == 0) continue;
            const Fe* r = &rows_[i * N_];
            for (size_t c = 0; c < N_; ++c)
                if (r[c]) out[c] = F.add(out[c], F.mul(y, r[c]));
        }
        return out;
    }

private:
    static constexpr size_t kMatrixLimit = 2500;
    FieldPtr E_;
    size_t N_;
    std::vector<Fe> xs_;
    std::vector<Fe> rows_;
};

std::shared_ptr<const LineInterp> line_interp(const FieldPtr& E, size_t N, std::uint64_t start = 0) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, int, std::uint64_t, size_t>, std::shared_ptr<const LineInterp>> cache;
    auto key = std::make_tuple(E->p(), E->k(), start, N);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto li = std::make_shared<const LineInterp>(E, start, N);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, li).first->second;
}

constexpr std::uint64_t kGridLimit = 20000000;

}  // namespace

DPoly interpolate_grid(const FieldPtr& E, const std::vector<int>& degs,
                       const std::function<Fe(const std::vector<Fe>&)>& value) {
    const int nv = static_cast<int>(degs.size());
    std::vector<int> ext(nv);
    std::uint64_t total = 1;
    int maxdeg = 0;
    for (int v = 0; v < nv; ++v) {
        ext[v] = degs[v] + 1;
        maxdeg = std::max(maxdeg, degs[v]);
        total *= static_cast<std::uint64_t>(ext[v]);
        if (total > kGridLimit) fail(ErrorKind::LimitExceeded, "interpolation grid too large");
    }
    if (E->size() < static_cast<std::uint64_t>(maxdeg) + 2)
        fail(ErrorKind::FieldTooSmall, "working field too small for the interpolation grid");
    const Field& F = *E;
    std::vector<Fe> vals(total);
    parallel_for(total, [&](size_t idx) {
        std::vector<Fe> pt(nv);
        size_t r = idx;
        for (int v = 0; v < nv; ++v) {
            pt[v] = F.element(r % ext[v]);
            r /= ext[v];
        }
        vals[idx] = value(pt);
    });
    // transform one dimension at a time
    size_t stride = 1;
    for (int v = 0; v < nv; ++v) {
        const size_t N = ext[v];
        if (N > 1) {
            auto li = line_interp(E, N);
            const size_t lines = total / N;
            parallel_for(lines, [&](size_t l) {
                size_t lo = l % stride, hi = l / stride;
                size_t base = hi * stride * N + lo;
                std::vector<Fe> ys(N);
                for (size_t j = 0; j < N; ++j) ys[j] = vals[base + j * stride];
                UPoly c = (*li)(ys);
                c.resize(N, 0);
                for (size_t j = 0; j < N; ++j) vals[base + j * stride] = c[j];
            });
        }
        stride *= N;
    }
    DPoly out(E, ext);
    out.data() = std::move(vals);
    std::vector<Fe> chk(nv);
    for (int v = 0; v < nv; ++v) chk[v] = F.element(static_cast<std::uint64_t>(degs[v]) + 1);
    if (out.eval(chk) != value(chk)) fail(ErrorKind::DegreeBoundExceeded, "blackbox exceeds its declared degree bounds");
    out.normalize();
    return out;
}

// ---- compose_dense

SparsePoly compose_dense(const BlackBox& b, const Generator& g, const std::vector<int>& extra_vars) {
    if (g.n() != b.nvars()) fail(ErrorKind::ArityMismatch, "generator arity differs from the blackbox");
    const long T = std::max(1, b.total_deg_bound());
    const long m = static_cast<long>(g.m()), q = static_cast<long>(g.q()), n = g.n();
    std::vector<int> degs = {static_cast<int>(T * (q - 1)), static_cast<int>(T * (m - 1)), static_cast<int>(T * (n - 1)),
                             static_cast<int>(T), static_cast<int>(T)};
    if (g.revived()) degs[4] = b.deg_bound(*g.revived());
    if (!g.revived()) degs.push_back(static_cast<int>(T * (n - 1)));
    const int ar = g.arity();
    for (int v : extra_vars) {
        if (v < 0 || v >= b.nvars()) fail(ErrorKind::ArityMismatch, "extra variable out of range");
        degs.push_back(b.deg_bound(v));
    }
    int maxdeg = *std::max_element(degs.begin(), degs.end());
    WorkingField W = working_extension(g.field(), static_cast<std::uint64_t>(maxdeg) + 2);
    DPoly img = interpolate_grid(W.E, degs, [&](const std::vector<Fe>& in) {
        std::vector<Fe> gi(in.begin(), in.begin() + ar);
        std::vector<Fe> pt = g.eval(W.emb, gi);
        for (size_t j = 0; j < extra_vars.size(); ++j) pt[extra_vars[j]] = in[ar + j];
        return b.query(W.emb, pt);
    });
    auto back = pull_field(img, W.emb);
    if (!back) fail(ErrorKind::InternalError, "composed image left the base field");
    return back->to_sparse();
}

// ---- sparse_reconstruct

SparsePoly sparse_reconstruct(const BlackBox& b, int s, int d) {
    const int n = b.nvars();
    const FieldPtr& F = b.field();
    if (s < 1 || d < 1) fail(ErrorKind::UsageError, "sparsity and degree must be at least 1");
    const std::uint64_t m = static_cast<std::uint64_t>(n) * d * s * static_cast<std::uint64_t>(n) * d * s;
    WorkingField W = working_extension(F, Generator::required_size(m, n, d));
    Generator gen = Generator::build(m, n, W.E, d);
    const Field& E = *W.E;
    const std::uint64_t q = gen.q(), NT = gen.t_size();
    std::vector<Fe> T(NT);
    for (std::uint64_t t = 0; t < NT; ++t) T[t] = gen.delta(t + 1);
    auto li = line_interp(W.E, NT, m + 2 * static_cast<std::uint64_t>(n));
    auto ks_exp = [&](std::uint64_t i, int t) {
        std::uint64_t e = 1;
        for (int r = 0; r <= t; ++r) e = (e * i) % q;
        return e;
    };
    // f(G^KS(x, alpha_i, beta_j, w)) as a polynomial in x
    auto image = [&](std::uint64_t i, int j, Fe w) {
        std::vector<std::uint64_t> ex(n);
        for (int t = 0; t < n; ++t) ex[t] = ks_exp(i, t);
        std::vector<Fe> ys(NT), pt(n);
        for (std::uint64_t a = 0; a < NT; ++a) {
            for (int t = 0; t < n; ++t) {
                pt[t] = E.pow(T[a], ex[t]);
                if (t == j) pt[t] = E.mul(pt[t], w);
            }
            ys[a] = b.query(W.emb, pt);
        }
        UPoly c = (*li)(ys);
        up::trim(c);
        return c;
    };
    std::vector<Fe> wn(d + 1);
    for (int l = 0; l <= d; ++l) wn[l] = T[l];
    for (std::uint64_t i = 1; i <= m; ++i) {
        UPoly U = image(i, -1, 1);
        std::vector<size_t> supp;
        for (size_t e = 0; e < U.size(); ++e)
            if (U[e]) supp.push_back(e);
        if (supp.size() > static_cast<size_t>(s)) continue;
        std::vector<Mono> mons(supp.size(), Mono(n, 0));
        bool good = true;
        for (int j = 0; j < n && good; ++j) {
            std::vector<UPoly> P(d + 1);
            for (int l = 0; l <= d; ++l) P[l] = image(i, j, wn[l]);
            for (int l = 0; l <= d && good; ++l)
                for (size_t e = 0; e < P[l].size() && good; ++e)
                    if (P[l][e] && !std::binary_search(supp.begin(), supp.end(), e)) good = false;
            for (size_t a = 0; a < supp.size() && good; ++a) {
                std::vector<Fe> ys(d + 1);
                for (int l = 0; l <= d; ++l) ys[l] = supp[a] < P[l].size() ? P[l][supp[a]] : 0;
                UPoly c = up::interpolate(E, wn, ys);
                up::trim(c);
                int nz = 0, at = -1;
                for (size_t r = 0; r < c.size(); ++r)
                    if (c[r]) ++nz, at = static_cast<int>(r);
                if (nz != 1 || c[at] != U[supp[a]]) good = false;
                else mons[a][j] = static_cast<std::uint32_t>(at);
            }
        }
        if (!good) continue;
        std::vector<Term> terms;
        for (size_t a = 0; a < supp.size() && good; ++a) {
            std::uint64_t E2 = 0;
            for (int t = 0; t < n; ++t) E2 += mons[a][t] * ks_exp(i, t);
            if (E2 != supp[a]) good = false;
            auto c = W.emb.pull(U[supp[a]]);
            if (!c) good = false;
            else terms.push_back({mons[a], *c});
        }
        if (!good) continue;
        SparsePoly cand = SparsePoly::from_terms(F, n, terms);
        SparsePoly candE = map_field(cand, W.emb);
        // agreement on the whole image: every shift, every z = beta_j, x in T,
        // and d+1 values of w (both sides have degree <= d in w)
        bool ok = true;
        std::vector<Fe> pt(n);
        for (std::uint64_t k = 1; k <= m && ok; ++k)
            for (int j = 0; j < n && ok; ++j)
                for (int l = 0; l <= d && ok; ++l)
                    for (std::uint64_t a = 0; a < NT && ok; ++a) {
                        for (int t = 0; t < n; ++t) {
                            pt[t] = E.pow(T[a], ks_exp(k, t));
                            if (t == j) pt[t] = E.mul(pt[t], wn[l]);
                        }
                        ok = candE.eval(pt) == b.query(W.emb, pt);
                    }
        if (ok) return cand;
    }
    fail(ErrorKind::ReconstructFailed, "no shift yields a consistent sparse candidate");
}

// ---- faces

bool FaceSpec::operator<(const FaceSpec& o) const { return std::tie(u, y, zero) < std::tie(o.u, o.y, o.zero); }

std::vector<std::uint64_t> ks_weights(std::uint64_t k, std::uint64_t q, const std::vector<int>& coords) {
    std::vector<std::uint64_t> w;
    for (int t : coords) {
        std::uint64_t e = 1;
        for (int r = 0; r <= t; ++r) e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e) * k) % q);
        w.push_back(e);
    }
    return w;
}

namespace {

constexpr std::uint64_t kBitmapLimit = std::uint64_t(1) << 26;
constexpr std::uint64_t kBoxLimit = 20000000;

std::uint64_t box_size(size_t V, int D) {
    std::uint64_t b = 1;
    for (size_t i = 0; i < V; ++i) {
        b *= static_cast<std::uint64_t>(D) + 1;
        if (b > kBoxLimit) fail(ErrorKind::LimitExceeded, "weight box too large to certify");
    }
    return b;
}

// Calls fn(index, sum) over the box; stops when fn returns false.
template <class Fn>
bool for_box(const std::vector<std::uint64_t>& w, int D, Fn fn) {
    const size_t V = w.size();
    std::vector<int> e(V, 0);
    std::uint64_t sum = 0, idx = 0;
    while (true) {
        if (!fn(idx, sum)) return false;
        ++idx;
        size_t v = 0;
        while (v < V && e[v] == D) {
            sum -= static_cast<std::uint64_t>(D) * w[v];
            e[v] = 0;
            ++v;
        }
        if (v == V) return true;
        ++e[v];
        sum += w[v];
    }
}

}  // namespace

bool weights_injective(const std::vector<std::uint64_t>& w, int D) {
    const size_t V = w.size();
    if (V <= 1) return V == 0 || w[0] > 0 || D == 0;
    // a two-term relation w_a x = w_b y with 0 < x, y <= D
    for (size_t a = 0; a < V; ++a)
        for (size_t b = a + 1; b < V; ++b) {
            std::uint64_t g = std::gcd(w[a], w[b]);
            if (w[a] / g <= static_cast<std::uint64_t>(D) && w[b] / g <= static_cast<std::uint64_t>(D)) return false;
        }
    std::uint64_t total = box_size(V, D);
    unsigned __int128 range = 1;
    for (auto x : w) range += static_cast<unsigned __int128>(D) * x;
    if (range < total) return false;
    if (range <= kBitmapLimit) {
        // epoch stamps avoid clearing the buffer between calls
        thread_local std::vector<std::uint32_t> stamp;
        thread_local std::uint32_t epoch = 0;
        if (stamp.size() < static_cast<size_t>(range)) stamp.assign(static_cast<size_t>(range), 0), epoch = 0;
        if (++epoch == 0) std::fill(stamp.begin(), stamp.end(), 0), epoch = 1;
        const std::uint32_t ep = epoch;
        return for_box(w, D, [&](std::uint64_t, std::uint64_t s) {
            if (stamp[s] == ep) return false;
            stamp[s] = ep;
            return true;
        });
    }
    std::vector<std::uint64_t> sums;
    sums.reserve(total);
    for_box(w, D, [&](std::uint64_t, std::uint64_t s) {
        sums.push_back(s);
        return true;
    });
    std::sort(sums.begin(), sums.end());
    return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

std::optional<std::uint64_t> certified_shift(std::uint64_t m, const std::vector<int>& coords, int D) {
    const std::uint64_t q = next_prime_above(m);
    for (std::uint64_t k = 1; k <= m && k < q; ++k)
        if (weights_injective(ks_weights(k, q, coords), D)) return k;
    return std::nullopt;
}

CertifiedM m_cert(const std::vector<int>& coords, int D) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, int>, CertifiedM> cache;
    auto key = std::make_pair(coords, D);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::uint64_t prev = 1;
    for (std::uint64_t q = 2;; q = next_prime_above(q)) {
        // the pigeonhole bound rules out every k while q is small
        unsigned __int128 range = 1;
        for (size_t i = 0; i < coords.size(); ++i) range += static_cast<unsigned __int128>(D) * (q - 1);
        unsigned __int128 need = 1;
        for (size_t i = 0; i < coords.size() && need <= range; ++i) need *= static_cast<unsigned>(D + 1);
        if (range >= need) {
            for (std::uint64_t k = 1; k < q; ++k)
                if (weights_injective(ks_weights(k, q, coords), D)) {
                    CertifiedM r{std::max(prev, k), q, k};
                    std::lock_guard<std::mutex> lk(mu);
                    cache.emplace(key, r);
                    return r;
                }
        }
        prev = q;
    }
}

FaceEngine::FaceEngine(FieldPtr F, int n, int d, int D, int deg_cap, std::optional<std::uint64_t> m_override)
    : F_(std::move(F)), n_(n), d_(d), D_(D), deg_cap_(std::max(1, deg_cap)), override_(m_override) {}

const Face& FaceEngine::face(const FaceSpec& spec) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = faces_.find(spec);
    if (it != faces_.end()) return *it->second;
    auto f = std::make_unique<Face>();
    f->spec = spec;
    f->D = D_;
    f->slots.assign(n_, Slot{});
    for (int t = 0; t < n_; ++t) {
        if (t == spec.u) f->slots[t].kind = SlotKind::U;
        else if (t == spec.y) f->slots[t].kind = SlotKind::Y;
        else if (std::find(spec.zero.begin(), spec.zero.end(), t) != spec.zero.end()) f->slots[t].kind = SlotKind::Zero;
        else f->weight_coords.push_back(t);
    }
    if (override_) {
        f->m = *override_;
        f->q = next_prime_above(f->m);
        auto k = certified_shift(f->m, f->weight_coords, D_);
        f->certified = k.has_value();
        f->k = k ? *k : std::min(f->m, f->q - 1);
    } else {
        CertifiedM c = m_cert(f->weight_coords, D_);
        f->m = c.m;
        f->q = c.q;
        f->k = c.k;
        f->certified = true;
    }
    auto w = ks_weights(f->k, f->q, f->weight_coords);
    unsigned __int128 range = 1, dx = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        f->slots[f->weight_coords[i]].w = w[i];
        range += static_cast<unsigned __int128>(D_) * w[i];
        dx += static_cast<unsigned __int128>(deg_cap_) * w[i];
    }
    if (range > kBitmapLimit || dx > kGridLimit) fail(ErrorKind::LimitExceeded, "face weights too large");
    auto table = std::make_shared<std::vector<std::int32_t>>(static_cast<size_t>(range), -1);
    box_size(w.size(), D_);
    for_box(w, D_, [&](std::uint64_t idx, std::uint64_t s) {
        if ((*table)[s] < 0) (*table)[s] = static_cast<std::int32_t>(idx);
        return true;
    });
    f->decode = table;
    std::uint64_t need = std::max<std::uint64_t>(static_cast<std::uint64_t>(dx) + 2, deg_cap_ + 2);
    need = std::max(need, Generator::required_size(f->m, n_, d_));
    WorkingField W = working_extension(F_, need);
    f->E = W.E;
    f->emb = W.emb;
    const Face& ref = *f;
    faces_.emplace(spec, std::move(f));
    return ref;
}

DPoly FaceEngine::compose(const SparsePoly& p, const Face& f) const {
    const Field& E = *f.E;
    std::vector<int> ext = {1, 1, 1};
    std::vector<std::array<std::uint64_t, 3>> ex;
    for (auto& t : p.terms()) {
        std::array<std::uint64_t, 3> e = {0, 0, 0};
        bool zero = false;
        for (int i = 0; i < n_; ++i) {
            if (!t.e[i]) continue;
            switch (f.slots[i].kind) {
            case SlotKind::Weight: e[0] += f.slots[i].w * t.e[i]; break;
            case SlotKind::U: e[1] += t.e[i]; break;
            case SlotKind::Y: e[2] += t.e[i]; break;
            case SlotKind::Zero: zero = true; break;
            }
        }
        if (zero) {
            ex.push_back({~std::uint64_t(0), 0, 0});
            continue;
        }
        if (e[0] > kGridLimit) fail(ErrorKind::LimitExceeded, "face image too large");
        for (int v = 0; v < 3; ++v) ext[v] = std::max(ext[v], static_cast<int>(e[v]) + 1);
        ex.push_back(e);
    }
    DPoly out(f.E, ext);
    for (size_t a = 0; a < ex.size(); ++a) {
        if (ex[a][0] == ~std::uint64_t(0)) continue;
        std::vector<int> e = {static_cast<int>(ex[a][0]), static_cast<int>(ex[a][1]), static_cast<int>(ex[a][2])};
        out.set(e, E.add(out.at(e), f.emb.map(p.terms()[a].c)));
    }
    out.normalize();
    return out;
}

DPoly FaceEngine::compose(const BoxPtr& b, const Face& f) {
    if (b->kind() == BoxKind::Explicit) return compose(static_cast<const ExplicitBox&>(*b).poly(), f);
    auto key = std::make_pair(b.get(), &f);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second.second;
    }
    std::vector<int> degs = {0, 0, 0};
    for (int t = 0; t < n_; ++t) {
        const Slot& s = f.slots[t];
        if (s.kind == SlotKind::Weight) degs[0] += static_cast<int>(s.w) * b->deg_bound(t);
        else if (s.kind == SlotKind::U) degs[1] += b->deg_bound(t);
        else if (s.kind == SlotKind::Y) degs[2] += b->deg_bound(t);
    }
    const Field& E = *f.E;
    DPoly img = interpolate_grid(f.E, degs, [&](const std::vector<Fe>& in) {
        std::vector<Fe> pt(n_, 0);
        for (int t = 0; t < n_; ++t) {
            const Slot& s = f.slots[t];
            switch (s.kind) {
            case SlotKind::Weight: pt[t] = E.pow(in[0], s.w); break;
            case SlotKind::U: pt[t] = in[1]; break;
            case SlotKind::Y: pt[t] = in[2]; break;
            case SlotKind::Zero: break;
            }
        }
        return b->query(f.emb, pt);
    });
    std::lock_guard<std::mutex> lk(mu_);
    cache_.emplace(key, std::make_pair(b, img));
    return img;
}

std::optional<SparsePoly> FaceEngine::decode(const DPoly& img, const Face& f) const {
    std::vector<Term> terms;
    if (img.is_zero()) return SparsePoly(F_, n_);
    const auto& ext = img.ext();
    const auto& data = img.data();
    const int V = static_cast<int>(f.weight_coords.size());
    for (size_t idx = 0; idx < data.size(); ++idx) {
        if (!data[idx]) continue;
        size_t r = idx;
        std::uint64_t e[3] = {0, 0, 0};
        for (int v = 0; v < img.nvars(); ++v) {
            e[v] = r % ext[v];
            r /= ext[v];
        }
        if (e[0] >= f.decode->size()) return std::nullopt;
        std::int32_t bi = (*f.decode)[e[0]];
        if (bi < 0) return std::nullopt;
        Mono mono(n_, 0);
        for (int a = 0; a < V; ++a) {
            mono[f.weight_coords[a]] = static_cast<std::uint32_t>(bi % (f.D + 1));
            bi /= (f.D + 1);
        }
        if (f.spec.u >= 0) mono[f.spec.u] += static_cast<std::uint32_t>(e[1]);
        else if (e[1]) return std::nullopt;
        if (f.spec.y >= 0) mono[f.spec.y] += static_cast<std::uint32_t>(e[2]);
        else if (e[2]) return std::nullopt;
        auto c = f.emb.pull(data[idx]);
        if (!c) return std::nullopt;
        terms.push_back({mono, *c});
    }
    return SparsePoly::from_terms(F_, n_, std::move(terms));
}

std::uint64_t FaceEngine::m_used() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::uint64_t m = 0;
    for (auto& [k, f] : faces_) m = std::max(m, f->m);
    return m;
}

std::uint64_t FaceEngine::q_used() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::uint64_t q = 0;
    for (auto& [k, f] : faces_) q = std::max(q, f->q);
    return q;
}

bool FaceEngine::all_certified() const {
    std::lock_guard<std::mutex> lk(mu_);
    for (auto& [k, f] : faces_)
        if (!f->certified) return false;
    return true;
}

size_t FaceEngine::face_count() const {
    std::lock_guard<std::mutex> lk(mu_);
    return faces_.size();
}

}  // namespace sf
