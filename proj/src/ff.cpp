#include "sparsefactor/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace sf {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::SizeOverflow: return "SizeOverflow";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::CoeffOutOfRange: return "CoeffOutOfRange";
        case ErrorKind::ZeroFreeTerm: return "ZeroFreeTerm";
        case ErrorKind::InternalError: return "InternalError";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::DegreeBoundExceeded: return "DegreeBoundExceeded";
        case ErrorKind::ReconstructFailed: return "ReconstructFailed";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::BothConstant: return "BothConstant";
        case ErrorKind::ConstantInVar: return "ConstantInVar";
        case ErrorKind::CharTooSmall: return "CharTooSmall";
        case ErrorKind::LiftBudgetExceeded: return "LiftBudgetExceeded";
        case ErrorKind::CandidateExplosion: return "CandidateExplosion";
        case ErrorKind::CharModeViolation: return "CharModeViolation";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::SBudgetExceeded: return "SBudgetExceeded";
        case ErrorKind::LimitExceeded: return "LimitExceeded";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "Unknown";
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Dense polynomials mod p, low degree first; used only while building fields.
using Vp = std::vector<std::uint64_t>;

void vtrim(Vp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vp vmulmod(const Vp& a, const Vp& b, const Vp& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vp r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    size_t n = f.size() - 1;  // f monic
    for (size_t i = r.size(); i-- > n;) {
        std::uint64_t c = r[i];
        if (c == 0) continue;
        for (size_t j = 0; j <= n; ++j) r[i - n + j] = (r[i - n + j] + p - mulmod(c, f[j], p)) % p;
    }
    r.resize(std::min(r.size(), n));
    vtrim(r);
    return r;
}

Vp vpowx(std::uint64_t e, const Vp& base, const Vp& f, std::uint64_t p) {
    Vp r{1};
    Vp b = base;
    while (e) {
        if (e & 1) r = vmulmod(r, b, f, p);
        b = vmulmod(b, b, f, p);
        e >>= 1;
    }
    return r;
}

Vp vmod(Vp a, const Vp& b, std::uint64_t p) {
    vtrim(a);
    size_t db = b.size() - 1;
    std::uint64_t il = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        std::uint64_t c = mulmod(a.back(), il, p);
        size_t sh = a.size() - b.size();
        for (size_t j = 0; j <= db; ++j) a[sh + j] = (a[sh + j] + p - mulmod(c, b[j], p)) % p;
        vtrim(a);
    }
    return a;
}

Vp vgcd(Vp a, Vp b, std::uint64_t p) {
    vtrim(a);
    vtrim(b);
    while (!b.empty()) {
        Vp r = vmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::mutex g_field_mu;
std::map<std::pair<std::uint64_t, int>, FieldPtr>& field_cache() {
    static std::map<std::pair<std::uint64_t, int>, FieldPtr> c;
    return c;
}

std::mutex g_emb_mu;
std::map<std::pair<const Field*, const Field*>, std::shared_ptr<Embedding>>& emb_cache() {
    static std::map<std::pair<const Field*, const Field*>, std::shared_ptr<Embedding>> c;
    return c;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::uint64_t next_prime_above(std::uint64_t m) {
    for (std::uint64_t c = m + 1;; ++c) {
        bool pr = c >= 2;
        for (std::uint64_t d = 2; pr && d * d <= c; ++d)
            if (c % d == 0) pr = false;
        if (pr) return c;
    }
}

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& f) {
    if (f.size() < 2 || f.back() != 1) return false;
    size_t k = f.size() - 1;
    if (k == 1) return true;
    Vp x{0, 1};
    // x^{p^k} == x mod f
    Vp xp = x;
    for (size_t i = 0; i < k; ++i) xp = vpowx(p, xp, f, p);
    Vp diff = xp;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    vtrim(diff);
    if (!diff.empty()) return false;
    for (std::uint64_t r : prime_factors(k)) {
        Vp y = x;
        for (size_t i = 0; i < k / r; ++i) y = vpowx(p, y, f, p);
        y.resize(std::max<size_t>(y.size(), 2), 0);
        y[1] = (y[1] + p - 1) % p;
        vtrim(y);
        Vp g = vgcd(f, y, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FieldPtr Field::prime(std::uint64_t p) { return extension(p, 1); }

FieldPtr Field::extension(std::uint64_t p, int k) {
    if (!is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1) fail(ErrorKind::SizeOverflow, "extension degree must be positive");
    if (k == 1 && p > kMaxPrime) fail(ErrorKind::SizeOverflow, "prime exceeds 2^62");
    std::uint64_t q = p;
    if (k > 1) {
        unsigned __int128 qq = 1;
        for (int i = 0; i < k; ++i) {
            qq *= p;
            if (qq > kMaxExtensionSize) fail(ErrorKind::SizeOverflow, "field size exceeds table bound");
        }
        q = static_cast<std::uint64_t>(qq);
    }
    {
        std::lock_guard<std::mutex> lk(g_field_mu);
        auto it = field_cache().find({p, k});
        if (it != field_cache().end()) return it->second;
    }
    std::shared_ptr<Field> F(new Field());
    F->p_ = p;
    F->k_ = k;
    F->q_ = k == 1 ? p : q;
    if (k > 1) {
        // Lexicographic order: coefficient vectors (c_{k-1}, ..., c_0) ascending.
        std::vector<std::uint64_t> f(k + 1, 0);
        f[k] = 1;
        std::uint64_t total = q;
        bool found = false;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (int i = 0; i < k; ++i) {
                f[i] = v % p;
                v /= p;
            }
            // idx enumerates c_0 fastest; lexicographic order from the top
            // coefficient down means c_{k-1} is most significant, which matches.
            if (f[0] == 0) continue;
            if (is_irreducible_mod_p(p, f)) {
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorKind::InternalError, "no irreducible polynomial found");
        F->modulus_ = f;
        F->build_tables();
    }
    std::lock_guard<std::mutex> lk(g_field_mu);
    auto [it, ins] = field_cache().emplace(std::make_pair(p, k), F);
    return it->second;
}

void Field::build_tables() {
    const std::uint64_t q = q_;
    const int k = k_;
    const std::uint64_t p = p_;
    auto enc = [&](const std::vector<std::uint32_t>& d) {
        std::uint64_t e = 0;
        for (int i = k - 1; i >= 0; --i) e = e * p + d[i];
        return e;
    };
    auto dec = [&](std::uint64_t e) {
        std::vector<std::uint32_t> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = static_cast<std::uint32_t>(e % p);
            e /= p;
        }
        return d;
    };
    // multiply digit vector a by g (digit vector), reduce by modulus
    auto mulpoly = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& g, int gdeg) {
        std::vector<std::uint64_t> r(k + gdeg, 0);
        for (int i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j <= gdeg; ++j) r[i + j] = (r[i + j] + std::uint64_t(a[i]) * g[j]) % p;
        }
        for (int i = k + gdeg - 1; i >= k; --i) {
            std::uint64_t c = r[i];
            if (!c) continue;
            for (int j = 0; j < k; ++j) r[i - k + j] = (r[i - k + j] + (p - c) * modulus_[j]) % p;
            r[i] = 0;
        }
        std::vector<std::uint32_t> out(k);
        for (int i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
        return out;
    };
    auto factors = prime_factors(q - 1);
    // generic power by square-and-multiply in digit representation
    auto dpow = [&](std::vector<std::uint32_t> b, std::uint64_t e) {
        std::vector<std::uint32_t> r(k, 0);
        r[0] = 1;
        while (e) {
            if (e & 1) r = mulpoly(r, b, k - 1);
            b = mulpoly(b, b, k - 1);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::uint32_t> gen;
    int gdeg = 0;
    for (std::uint64_t c = 2; c < q; ++c) {
        auto d = dec(c);
        bool ok = true;
        for (auto r : factors) {
            auto x = dpow(d, (q - 1) / r);
            bool is_one = x[0] == 1;
            for (int i = 1; i < k && is_one; ++i) is_one = x[i] == 0;
            if (is_one) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = d;
            gdeg = k - 1;
            while (gdeg > 0 && gen[gdeg] == 0) --gdeg;
            break;
        }
    }
    if (gen.empty()) fail(ErrorKind::InternalError, "no primitive element");
    log_.assign(q, 0);
    exp_.assign(2 * (q - 1), 0);
    std::vector<std::uint32_t> cur(k, 0);
    cur[0] = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
        std::uint64_t e = enc(cur);
        exp_[i] = static_cast<std::uint32_t>(e);
        exp_[i + q - 1] = static_cast<std::uint32_t>(e);
        log_[e] = static_cast<std::uint32_t>(i);
        cur = mulpoly(cur, gen, gdeg);
    }
    zech_.assign(q - 1, -1);
    for (std::uint64_t dd = 0; dd < q - 1; ++dd) {
        std::uint64_t e = exp_[dd];
        std::uint64_t d0 = e % p;
        std::uint64_t s = e - d0 + (d0 + 1) % p;
        zech_[dd] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
    neg_shift_ = p == 2 ? 0 : (q - 1) / 2;
}

Fe Field::ext_add(Fe a, Fe b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint64_t la = log_[a], lb = log_[b];
    std::uint64_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    std::int64_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint64_t>(z)];
}

Fe Field::from_int(long long v) const {
    long long m = static_cast<long long>(p_ > static_cast<std::uint64_t>(INT64_MAX) ? 0 : p_);
    if (m == 0) return static_cast<Fe>(v);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<Fe>(r);
}

Fe Field::inv(Fe a) const {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (k_ == 1) {
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
        while (nr != 0) {
            std::int64_t qq = r / nr;
            std::int64_t tmp = t - qq * nt;
            t = nt;
            nt = tmp;
            tmp = r - qq * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Fe>(t);
    }
    std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Fe Field::pow(Fe a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (k_ == 1) return powmod(a, e, p_);
    std::uint64_t l = log_[a];
    std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(l) * (e % (q_ - 1))) % (q_ - 1));
    return exp_[r];
}

Fe Field::pth_root(Fe a) const {
    if (k_ == 1 || a == 0) return a;
    std::uint64_t e = 1;
    for (int i = 0; i < k_ - 1; ++i) e *= p_;
    return pow(a, e);
}

std::vector<std::uint64_t> Field::digits(Fe a) const {
    std::vector<std::uint64_t> d(k_);
    if (k_ == 1) {
        d[0] = a;
        return d;
    }
    for (int i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Fe Field::from_digits(const std::vector<std::uint64_t>& d) const {
    if (k_ == 1) return d.empty() ? 0 : d[0] % p_;
    Fe e = 0;
    for (int i = k_ - 1; i >= 0; --i) e = e * p_ + (i < static_cast<int>(d.size()) ? d[i] % p_ : 0);
    return e;
}

FieldPtr Field::prime_subfield() const { return Field::prime(p_); }

std::string Field::describe() const {
    if (k_ == 1) return "F_" + std::to_string(p_);
    return "F_" + std::to_string(p_) + "^" + std::to_string(k_);
}

Embedding Embedding::identity(FieldPtr F) {
    Embedding e;
    e.from_ = F;
    e.to_ = F;
    e.identity_ = true;
    return e;
}

Embedding Embedding::make(FieldPtr F, FieldPtr E) {
    if (F->p() != E->p() || E->k() % F->k() != 0)
        fail(ErrorKind::FieldMismatch, F->describe() + " is not a subfield of " + E->describe());
    if (F->k() == 1 || F->same(*E)) {
        Embedding e;
        e.from_ = F;
        e.to_ = E;
        e.identity_ = true;
        return e;
    }
    {
        std::lock_guard<std::mutex> lk(g_emb_mu);
        auto it = emb_cache().find({F.get(), E.get()});
        if (it != emb_cache().end()) return *it->second;
    }
    const auto& mod = F->modulus();
    Fe root = 0;
    bool found = false;
    for (Fe r = 0; r < E->size() && !found; ++r) {
        Fe acc = 0;
        for (size_t i = mod.size(); i-- > 0;) acc = E->add(E->mul(acc, r), E->from_int(static_cast<long long>(mod[i])));
        if (acc == 0) {
            root = r;
            found = true;
        }
    }
    if (!found) fail(ErrorKind::InternalError, "embedding root not found");
    auto emb = std::make_shared<Embedding>();
    emb->from_ = F;
    emb->to_ = E;
    emb->identity_ = false;
    emb->fwd_.resize(F->size());
    for (Fe a = 0; a < F->size(); ++a) {
        auto d = F->digits(a);
        Fe acc = 0;
        for (size_t i = d.size(); i-- > 0;) acc = E->add(E->mul(acc, root), E->from_int(static_cast<long long>(d[i])));
        emb->fwd_[a] = acc;
    }
    emb->back_.assign(E->size(), -1);
    for (Fe a = 0; a < F->size(); ++a) emb->back_[emb->fwd_[a]] = static_cast<std::int64_t>(a);
    std::lock_guard<std::mutex> lk(g_emb_mu);
    emb_cache()[{F.get(), E.get()}] = emb;
    return *emb;
}

Fe Embedding::map(Fe a) const { return identity_ ? a : fwd_[a]; }

std::optional<Fe> Embedding::pull(Fe a) const {
    if (identity_) {
        if (a < from_->size()) return a;
        return std::nullopt;
    }
    std::int64_t b = back_[a];
    if (b < 0) return std::nullopt;
    return static_cast<Fe>(b);
}

WorkingField working_extension(const FieldPtr& F, std::uint64_t min_size) {
    if (F->size() >= min_size) return {F, Embedding::identity(F)};
    std::uint64_t p = F->p();
    int k = F->k();
    for (int j = 2;; ++j) {
        unsigned __int128 sz = 1;
        for (int i = 0; i < k * j; ++i) sz *= p;
        if (sz > kMaxExtensionSize)
            fail(ErrorKind::FieldTooSmall, "required field size " + std::to_string(min_size) + " exceeds extension bound over " +
                                               F->describe());
        if (sz >= min_size) {
            FieldPtr E = Field::extension(p, k * j);
            return {E, Embedding::make(F, E)};
        }
    }
}

}  // namespace sf
