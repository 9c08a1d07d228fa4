#include "sparsefactor/poly.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace sf {

namespace {

struct MonoHash {
    size_t operator()(const Mono& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto e : m) {
            h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

std::uint64_t mono_deg(const Mono& m) {
    std::uint64_t s = 0;
    for (auto e : m) s += e;
    return s;
}

void check_same(const SparsePoly& f, const SparsePoly& g) {
    if (f.nvars() != g.nvars()) fail(ErrorKind::ArityMismatch, "variable count mismatch");
    if (f.field() && g.field() && f.field() != g.field() && !f.F().same(g.F()))
        fail(ErrorKind::FieldMismatch, "polynomials over different fields");
}

const FieldPtr& pick_field(const SparsePoly& f, const SparsePoly& g) { return f.field() ? f.field() : g.field(); }

constexpr std::uint32_t kMaxExp = 1u << 30;

}  // namespace

int grevlex_cmp(const Mono& a, const Mono& b) {
    std::uint64_t da = mono_deg(a), db = mono_deg(b);
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

SparsePoly SparsePoly::constant(FieldPtr F, int n, Fe c) {
    SparsePoly r(F, n);
    if (c != 0) r.terms_.push_back({Mono(n, 0), c});
    return r;
}

SparsePoly SparsePoly::var(FieldPtr F, int n, int i) {
    Mono e(n, 0);
    e[i] = 1;
    return monomial(std::move(F), n, e, 1);
}

SparsePoly SparsePoly::monomial(FieldPtr F, int n, const Mono& e, Fe c) {
    SparsePoly r(F, n);
    if (c != 0) r.terms_.push_back({e, c});
    return r;
}

SparsePoly SparsePoly::from_terms(FieldPtr F, int n, std::vector<Term> terms) {
    SparsePoly r(F, n);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grevlex_cmp(a.e, b.e) > 0; });
    for (auto& t : terms) {
        if (static_cast<int>(t.e.size()) != n) fail(ErrorKind::ArityMismatch, "exponent length mismatch");
        if (!r.terms_.empty() && r.terms_.back().e == t.e) {
            r.terms_.back().c = F->add(r.terms_.back().c, t.c);
        } else {
            if (!r.terms_.empty() && r.terms_.back().c == 0) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().c == 0) r.terms_.pop_back();
    return r;
}

bool SparsePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_deg(terms_[0].e) == 0);
}

bool SparsePoly::is_one() const { return terms_.size() == 1 && mono_deg(terms_[0].e) == 0 && terms_[0].c == 1; }

Fe SparsePoly::constant_term() const {
    if (terms_.empty()) return 0;
    const Term& t = terms_.back();
    return mono_deg(t.e) == 0 ? t.c : 0;
}

int SparsePoly::individual_degree(int i) const {
    std::uint32_t m = 0;
    for (auto& t : terms_) m = std::max(m, t.e[i]);
    return static_cast<int>(m);
}

int SparsePoly::max_individual_degree() const {
    int m = 0;
    for (int i = 0; i < n_; ++i) m = std::max(m, individual_degree(i));
    return m;
}

int SparsePoly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(mono_deg(terms_.front().e)); }

Mono SparsePoly::degrees() const {
    Mono d(n_, 0);
    for (auto& t : terms_)
        for (int i = 0; i < n_; ++i) d[i] = std::max(d[i], t.e[i]);
    return d;
}

std::vector<int> SparsePoly::support() const {
    std::vector<int> s;
    Mono d = degrees();
    for (int i = 0; i < n_; ++i)
        if (d[i] > 0) s.push_back(i);
    return s;
}

Fe SparsePoly::eval(const std::vector<Fe>& point) const {
    if (static_cast<int>(point.size()) != n_) fail(ErrorKind::ArityMismatch, "evaluation point has wrong length");
    const Field& F = *F_;
    Fe acc = 0;
    for (auto& t : terms_) {
        Fe v = t.c;
        for (int i = 0; i < n_ && v != 0; ++i)
            if (t.e[i]) v = F.mul(v, F.pow(point[i], t.e[i]));
        acc = F.add(acc, v);
    }
    return acc;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].c != o.terms_[i].c || terms_[i].e != o.terms_[i].e) return false;
    return true;
}

bool SparsePoly::operator<(const SparsePoly& o) const {
    size_t m = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < m; ++i) {
        int c = grevlex_cmp(terms_[i].e, o.terms_[i].e);
        if (c != 0) return c < 0;
        if (terms_[i].c != o.terms_[i].c) return terms_[i].c < o.terms_[i].c;
    }
    return terms_.size() < o.terms_.size();
}

std::string mono_to_string(const Mono& m, int base) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + base);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string SparsePoly::to_string(int base) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& t : terms_) {
        if (!out.empty()) out += " + ";
        bool unit_mono = mono_deg(t.e) == 0;
        if (unit_mono) {
            out += std::to_string(t.c);
        } else if (t.c == 1) {
            out += mono_to_string(t.e, base);
        } else {
            out += std::to_string(t.c) + "*" + mono_to_string(t.e, base);
        }
    }
    return out;
}

std::string SparsePoly::key() const {
    std::string k = std::to_string(n_) + "|";
    for (auto& t : terms_) {
        for (auto e : t.e) k += std::to_string(e) + ",";
        k += ":" + std::to_string(t.c) + ";";
    }
    return k;
}

SparsePoly add_impl(const SparsePoly& f, const SparsePoly& g, bool negate) {
    check_same(f, g);
    const FieldPtr& Fp = pick_field(f, g);
    SparsePoly r(Fp, f.nvars());
    if (!Fp) return r;
    const Field& F = *Fp;
    size_t i = 0, j = 0;
    const auto& a = f.terms_;
    const auto& b = g.terms_;
    while (i < a.size() || j < b.size()) {
        int c = i == a.size() ? -1 : j == b.size() ? 1 : grevlex_cmp(a[i].e, b[j].e);
        if (c > 0) {
            r.terms_.push_back(a[i++]);
        } else if (c < 0) {
            Term t = b[j++];
            if (negate) t.c = F.neg(t.c);
            r.terms_.push_back(std::move(t));
        } else {
            Fe v = negate ? F.sub(a[i].c, b[j].c) : F.add(a[i].c, b[j].c);
            if (v) r.terms_.push_back({a[i].e, v});
            ++i;
            ++j;
        }
    }
    return r;
}

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) { return add_impl(f, g, false); }
SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) { return add_impl(f, g, true); }
SparsePoly operator-(const SparsePoly& f) { return SparsePoly(f.field(), f.nvars()) - f; }

SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    check_same(f, g);
    const FieldPtr& Fp = pick_field(f, g);
    if (f.is_zero() || g.is_zero()) return SparsePoly(Fp, f.nvars());
    const Field& F = *Fp;
    const int n = f.nvars();
    std::unordered_map<Mono, Fe, MonoHash> acc;
    acc.reserve(f.sparsity() * g.sparsity() * 2);
    Mono e(n);
    for (auto& a : f.terms_)
        for (auto& b : g.terms_) {
            for (int i = 0; i < n; ++i) {
                std::uint64_t s = std::uint64_t(a.e[i]) + b.e[i];
                if (s > kMaxExp) fail(ErrorKind::Overflow, "exponent overflow");
                e[i] = static_cast<std::uint32_t>(s);
            }
            Fe v = F.mul(a.c, b.c);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, v);
            else
                it->second = F.add(it->second, v);
        }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c) ts.push_back({m, c});
    return SparsePoly::from_terms(Fp, n, std::move(ts));
}

SparsePoly scale(const SparsePoly& f, Fe c) {
    if (c == 0) return SparsePoly(f.field(), f.nvars());
    std::vector<Term> ts = f.terms();
    for (auto& t : ts) t.c = f.F().mul(t.c, c);
    SparsePoly r(f.field(), f.nvars());
    return SparsePoly::from_terms(f.field(), f.nvars(), std::move(ts));
}

SparsePoly pow(const SparsePoly& f, unsigned e) {
    SparsePoly r = SparsePoly::constant(f.field(), f.nvars(), 1);
    SparsePoly b = f;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

SparsePoly product(const std::vector<SparsePoly>& fs, FieldPtr F, int n) {
    SparsePoly r = SparsePoly::constant(F, n, 1);
    for (auto& f : fs) r = r * f;
    return r;
}

std::optional<SparsePoly> exact_div(const SparsePoly& f, const SparsePoly& g) {
    if (g.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
    check_same(f, g);
    if (f.is_zero()) return SparsePoly(g.field(), g.nvars());
    const Field& F = g.F();
    const int n = f.nvars();
    Mono fd = f.degrees(), gd = g.degrees();
    Mono bound(n);
    for (int i = 0; i < n; ++i) {
        if (gd[i] > fd[i]) return std::nullopt;
        bound[i] = fd[i] - gd[i];
    }
    auto cmp = [](const Mono& a, const Mono& b) { return grevlex_cmp(a, b) > 0; };
    std::map<Mono, Fe, decltype(cmp)> rem(cmp);
    for (auto& t : f.terms()) rem.emplace(t.e, t.c);
    const Term& lt = g.terms().front();
    Fe ilc = F.inv(lt.c);
    std::vector<Term> qt;
    Mono e(n);
    while (!rem.empty()) {
        auto it = rem.begin();
        for (int i = 0; i < n; ++i) {
            if (it->first[i] < lt.e[i]) return std::nullopt;
            e[i] = it->first[i] - lt.e[i];
            if (e[i] > bound[i]) return std::nullopt;
        }
        Fe c = F.mul(it->second, ilc);
        qt.push_back({e, c});
        for (auto& gt : g.terms()) {
            Mono m(n);
            for (int i = 0; i < n; ++i) m[i] = e[i] + gt.e[i];
            Fe v = F.mul(c, gt.c);
            auto jt = rem.find(m);
            if (jt == rem.end()) {
                rem.emplace(std::move(m), F.neg(v));
            } else {
                jt->second = F.sub(jt->second, v);
                if (jt->second == 0) rem.erase(jt);
            }
        }
    }
    SparsePoly q = SparsePoly::from_terms(g.field(), n, std::move(qt));
    if (q * g != f) fail(ErrorKind::InternalError, "exact division remultiplication mismatch");
    return q;
}

SparsePoly canonical(const SparsePoly& f, Fe* unit) {
    if (f.is_zero()) {
        if (unit) *unit = 0;
        return f;
    }
    Fe c = f.lc();
    if (unit) *unit = c;
    if (c == 1) return f;
    return scale(f, f.F().inv(c));
}

bool is_canonical(const SparsePoly& f) { return f.is_zero() || f.lc() == 1; }

std::vector<SparsePoly> uni_view(const SparsePoly& f, int i) {
    int d = f.is_zero() ? 0 : f.individual_degree(i);
    std::vector<std::vector<Term>> buckets(d + 1);
    for (auto& t : f.terms()) {
        Term u = t;
        u.e[i] = 0;
        buckets[t.e[i]].push_back(std::move(u));
    }
    std::vector<SparsePoly> out;
    out.reserve(d + 1);
    for (auto& b : buckets) out.push_back(SparsePoly::from_terms(f.field(), f.nvars(), std::move(b)));
    return out;
}

SparsePoly from_uni_view(const std::vector<SparsePoly>& coeffs, int i, FieldPtr F, int n) {
    std::vector<Term> ts;
    for (size_t j = 0; j < coeffs.size(); ++j)
        for (auto& t : coeffs[j].terms()) {
            Term u = t;
            u.e[i] += static_cast<std::uint32_t>(j);
            ts.push_back(std::move(u));
        }
    return SparsePoly::from_terms(std::move(F), n, std::move(ts));
}

Mono largest_monomial_divisor(const SparsePoly& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "zero polynomial has no monomial divisor");
    Mono m = f.terms().front().e;
    for (auto& t : f.terms())
        for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.e[i]);
    return m;
}

SparsePoly divide_monomial(const SparsePoly& f, const Mono& m) {
    std::vector<Term> ts = f.terms();
    for (auto& t : ts)
        for (size_t i = 0; i < m.size(); ++i) {
            if (t.e[i] < m[i]) fail(ErrorKind::InternalError, "monomial does not divide");
            t.e[i] -= m[i];
        }
    return SparsePoly::from_terms(f.field(), f.nvars(), std::move(ts));
}

SparsePoly mul_monomial(const SparsePoly& f, const Mono& m) {
    std::vector<Term> ts = f.terms();
    for (auto& t : ts)
        for (size_t i = 0; i < m.size(); ++i) t.e[i] += m[i];
    return SparsePoly::from_terms(f.field(), f.nvars(), std::move(ts));
}

namespace {

using Rat = boost::multiprecision::cpp_rational;

// Is target a convex combination of pts?  Phase-1 simplex, Bland's rule.
bool in_hull(const std::vector<std::vector<long long>>& pts, const std::vector<long long>& target) {
    const size_t m = target.size() + 1;  // coordinate rows + sum row
    const size_t k = pts.size();
    if (k == 0) return false;
    // tableau: m rows, columns k lambdas + m artificials + rhs
    const size_t cols = k + m + 1;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols, 0));
    for (size_t r = 0; r < m; ++r) {
        Rat rhs = r + 1 < m ? Rat(target[r]) : Rat(1);
        int sgn = rhs < 0 ? -1 : 1;
        for (size_t j = 0; j < k; ++j) T[r][j] = Rat(r + 1 < m ? pts[j][r] : 1) * sgn;
        T[r][k + r] = 1;
        T[r][cols - 1] = rhs * sgn;
    }
    std::vector<size_t> basis(m);
    for (size_t r = 0; r < m; ++r) basis[r] = k + r;
    // objective: minimize sum of artificials -> reduced costs
    std::vector<Rat> z(cols, 0);
    for (size_t r = 0; r < m; ++r)
        for (size_t j = 0; j < cols; ++j) z[j] += T[r][j];
    for (size_t r = 0; r < m; ++r) z[k + r] = 0;
    for (int iter = 0; iter < 100000; ++iter) {
        size_t enter = cols;
        for (size_t j = 0; j + 1 < cols; ++j)
            if (z[j] > 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        size_t leave = m;
        Rat best;
        for (size_t r = 0; r < m; ++r) {
            if (T[r][enter] > 0) {
                Rat ratio = T[r][cols - 1] / T[r][enter];
                if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
        }
        if (leave == m) break;
        Rat piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (size_t r = 0; r < m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rat f = T[r][enter];
            for (size_t j = 0; j < cols; ++j) T[r][j] -= f * T[leave][j];
        }
        if (z[enter] != 0) {
            Rat f = z[enter];
            for (size_t j = 0; j < cols; ++j) z[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    return z[cols - 1] == 0;
}

}  // namespace

size_t newton_vertices(const SparsePoly& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "zero polynomial has no Newton polytope");
    const auto& ts = f.terms();
    if (ts.size() <= 2) return ts.size();
    // keep only coordinates that vary
    std::vector<int> coords;
    for (int i = 0; i < f.nvars(); ++i) {
        bool varies = false;
        for (auto& t : ts) varies |= t.e[i] != ts[0].e[i];
        if (varies) coords.push_back(i);
    }
    std::vector<std::vector<long long>> pts;
    for (auto& t : ts) {
        std::vector<long long> v;
        for (int i : coords) v.push_back(t.e[i]);
        pts.push_back(v);
    }
    size_t count = 0;
    for (size_t j = 0; j < pts.size(); ++j) {
        std::vector<std::vector<long long>> others;
        for (size_t i = 0; i < pts.size(); ++i)
            if (i != j) others.push_back(pts[i]);
        if (!in_hull(others, pts[j])) ++count;
    }
    return count;
}

SparsePoly derivative(const SparsePoly& f, int i) {
    std::vector<Term> ts;
    const Field& F = f.F();
    for (auto& t : f.terms()) {
        if (t.e[i] == 0) continue;
        Fe c = F.mul(t.c, F.from_int(static_cast<long long>(t.e[i] % F.p())));
        if (!c) continue;
        Term u{t.e, c};
        u.e[i] -= 1;
        ts.push_back(std::move(u));
    }
    return SparsePoly::from_terms(f.field(), f.nvars(), std::move(ts));
}

SparsePoly substitute(const SparsePoly& f, int i, Fe a) {
    std::vector<Term> ts;
    const Field& F = f.F();
    for (auto& t : f.terms()) {
        Term u = t;
        if (u.e[i]) u.c = F.mul(u.c, F.pow(a, u.e[i]));
        u.e[i] = 0;
        if (u.c) ts.push_back(std::move(u));
    }
    return SparsePoly::from_terms(f.field(), f.nvars(), std::move(ts));
}

SparsePoly map_field(const SparsePoly& f, const Embedding& emb) {
    std::vector<Term> ts = f.terms();
    for (auto& t : ts) t.c = emb.map(t.c);
    return SparsePoly::from_terms(emb.to(), f.nvars(), std::move(ts));
}

std::optional<SparsePoly> pull_field(const SparsePoly& f, const Embedding& emb) {
    std::vector<Term> ts = f.terms();
    for (auto& t : ts) {
        auto v = emb.pull(t.c);
        if (!v) return std::nullopt;
        t.c = *v;
    }
    return SparsePoly::from_terms(emb.from(), f.nvars(), std::move(ts));
}

SparsePoly remap_vars(const SparsePoly& f, const std::vector<int>& perm, int m) {
    std::vector<Term> ts;
    for (auto& t : f.terms()) {
        Mono e(m, 0);
        for (int i = 0; i < f.nvars(); ++i) {
            if (!t.e[i]) continue;
            if (perm[i] < 0) fail(ErrorKind::InternalError, "variable dropped by remap");
            e[perm[i]] += t.e[i];
        }
        ts.push_back({std::move(e), t.c});
    }
    return SparsePoly::from_terms(f.field(), m, std::move(ts));
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(const std::string& s, const FieldPtr& F, int n, int base) : s_(s), F_(F), n_(n), base_(base) {}

    SparsePoly run() {
        skip();
        if (pos_ >= s_.size()) error("empty input");
        SparsePoly r = expr();
        skip();
        if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    [[noreturn]] void error(const std::string& msg, ErrorKind k = ErrorKind::SyntaxError) {
        int col = static_cast<int>(pos_) + 1;
        throw Error(k, "column " + std::to_string(col) + ": " + msg, col);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }
    std::uint64_t integer(bool coeff) {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected integer");
        size_t start = pos_;
        unsigned __int128 v = 0;
        bool big = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > (static_cast<unsigned __int128>(1) << 64)) big = true;
            ++pos_;
        }
        if (coeff && (big || v >= F_->size())) {
            pos_ = start;
            error("coefficient out of range for " + F_->describe(), ErrorKind::CoeffOutOfRange);
        }
        if (!coeff && (big || v > 1000000)) {
            pos_ = start;
            error("exponent too large");
        }
        return static_cast<std::uint64_t>(v);
    }
    SparsePoly expr() {
        SparsePoly r(F_, n_);
        bool first = true;
        while (true) {
            skip();
            bool neg = false;
            if (peek('+') || peek('-')) {
                neg = s_[pos_] == '-';
                ++pos_;
            } else if (!first) {
                break;
            }
            SparsePoly t = term();
            r = neg ? r - t : r + t;
            first = false;
            if (!(peek('+') || peek('-'))) break;
        }
        return r;
    }
    SparsePoly term() {
        SparsePoly r = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                r = r * factor();
            } else if (starts_factor()) {
                r = r * factor();
            } else {
                break;
            }
        }
        return r;
    }
    SparsePoly factor() {
        SparsePoly b = primary();
        if (peek('^')) {
            ++pos_;
            auto e = integer(false);
            b = pow(b, static_cast<unsigned>(e));
        }
        return b;
    }
    SparsePoly primary() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            SparsePoly r = expr();
            if (!peek(')')) error("expected ')'");
            ++pos_;
            return r;
        }
        if (c == 'x') {
            size_t start = pos_;
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected variable index");
            std::uint64_t idx = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                idx = idx * 10 + static_cast<unsigned>(s_[pos_] - '0');
                if (idx > 1000000) break;
                ++pos_;
            }
            long long i = static_cast<long long>(idx) - base_;
            if (i < 0 || i >= n_) {
                pos_ = start;
                error("unknown variable x" + std::to_string(idx), ErrorKind::UnknownVariable);
            }
            return SparsePoly::var(F_, n_, static_cast<int>(i));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return SparsePoly::constant(F_, n_, integer(true));
        error(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    FieldPtr F_;
    int n_;
    int base_;
    size_t pos_ = 0;
};

}  // namespace

int max_var_index(const std::string& text, int base) {
    int best = -1;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'x') continue;
        size_t j = i + 1;
        long long v = 0;
        bool any = false;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 1000000) {
            v = v * 10 + (text[j] - '0');
            any = true;
            ++j;
        }
        if (any) best = std::max<long long>(best, v - base);
    }
    return best;
}

SparsePoly parse_poly(const std::string& text, const FieldPtr& F, int n, int base) {
    if (n < 0) n = std::max(1, max_var_index(text, base) + 1);
    Parser p(text, F, n, base);
    return p.run();
}

}  // namespace sf
