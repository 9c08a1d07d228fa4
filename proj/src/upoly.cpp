#include "sparsefactor/upoly.hpp"

#include <algorithm>
#include <array>

namespace sf::up {

namespace {

// Three-prime NTT for coefficient convolution over small prime fields.
struct NttPrime {
    std::uint32_t mod;
    std::uint32_t root;  // primitive root
    int max_log;
};
constexpr std::array<NttPrime, 3> kPrimes{{{998244353u, 3u, 23}, {167772161u, 3u, 25}, {469762049u, 3u, 26}}};

std::uint32_t pw(std::uint64_t a, std::uint64_t e, std::uint32_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

void ntt(std::vector<std::uint32_t>& a, bool inverse, const NttPrime& P) {
    const std::uint32_t m = P.mod;
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = pw(P.root, (m - 1) / len, m);
        if (inverse) w = pw(w, m - 2, m);
        std::vector<std::uint32_t> ws(len / 2);
        ws[0] = 1;
        for (size_t i = 1; i < len / 2; ++i) ws[i] = static_cast<std::uint32_t>(ws[i - 1] * w % m);
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                std::uint32_t u = a[i + j];
                std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t(a[i + j + len / 2]) * ws[j] % m);
                a[i + j] = u + v >= m ? u + v - m : u + v;
                a[i + j + len / 2] = u >= v ? u - v : u + m - v;
            }
        }
    }
    if (inverse) {
        std::uint64_t ni = pw(n, m - 2, m);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * ni % m);
    }
}

// Integer convolution of nonnegative sequences, result reduced mod p.
// Exact while n * max(a) * max(b) < 2^85.
std::vector<std::uint64_t> conv_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                    std::uint64_t p) {
    size_t need = a.size() + b.size() - 1;
    size_t n = 1;
    while (n < need) n <<= 1;
    std::array<std::vector<std::uint32_t>, 3> res;
    for (int t = 0; t < 3; ++t) {
        const auto& P = kPrimes[t];
        std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
        for (size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<std::uint32_t>(a[i] % P.mod);
        for (size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<std::uint32_t>(b[i] % P.mod);
        ntt(fa, false, P);
        ntt(fb, false, P);
        for (size_t i = 0; i < n; ++i) fa[i] = static_cast<std::uint32_t>(std::uint64_t(fa[i]) * fb[i] % P.mod);
        ntt(fa, true, P);
        res[t] = std::move(fa);
    }
    const std::uint64_t m0 = kPrimes[0].mod, m1 = kPrimes[1].mod, m2 = kPrimes[2].mod;
    const std::uint64_t inv_m0_m1 = pw(m0, m1 - 2, m1);
    const std::uint64_t m01_mod_m2 = m0 * m1 % m2;
    const std::uint64_t inv_m01_m2 = pw(m01_mod_m2, m2 - 2, m2);
    const unsigned __int128 m01 = static_cast<unsigned __int128>(m0) * m1;
    std::vector<std::uint64_t> out(need);
    for (size_t i = 0; i < need; ++i) {
        std::uint64_t r0 = res[0][i], r1 = res[1][i], r2 = res[2][i];
        std::uint64_t x1 = (r1 + m1 - r0 % m1) % m1 * inv_m0_m1 % m1;
        std::uint64_t v01 = r0 + m0 * x1;  // < m0*m1 < 2^58
        std::uint64_t x2 = (r2 + m2 - v01 % m2) % m2 * inv_m01_m2 % m2;
        unsigned __int128 v = static_cast<unsigned __int128>(v01) + m01 * x2;
        out[i] = static_cast<std::uint64_t>(v % p);
    }
    return out;
}

bool ntt_eligible(const Field& F) { return F.p() < (std::uint64_t(1) << 31); }

UPoly mul_ntt(const Field& F, const UPoly& a, const UPoly& b) {
    const int k = F.k();
    if (k == 1) {
        auto c = conv_mod(a, b, F.p());
        UPoly r(c.begin(), c.end());
        trim(r);
        return r;
    }
    const size_t L = 2 * k - 1;
    std::vector<std::uint64_t> A(a.size() * L, 0), B(b.size() * L, 0);
    for (size_t j = 0; j < a.size(); ++j) {
        auto d = F.digits(a[j]);
        for (int i = 0; i < k; ++i) A[j * L + i] = d[i];
    }
    for (size_t j = 0; j < b.size(); ++j) {
        auto d = F.digits(b[j]);
        for (int i = 0; i < k; ++i) B[j * L + i] = d[i];
    }
    auto C = conv_mod(A, B, F.p());
    const std::uint64_t p = F.p();
    const auto& md = F.modulus();
    UPoly r(a.size() + b.size() - 1, 0);
    std::vector<std::uint64_t> slot(L);
    for (size_t j = 0; j < r.size(); ++j) {
        for (size_t i = 0; i < L; ++i) slot[i] = j * L + i < C.size() ? C[j * L + i] : 0;
        for (size_t i = L; i-- > static_cast<size_t>(k);) {
            std::uint64_t c = slot[i];
            if (!c) continue;
            for (int t = 0; t < k; ++t) slot[i - k + t] = (slot[i - k + t] + (p - c) * md[t]) % p;
            slot[i] = 0;
        }
        slot.resize(k);
        r[j] = F.from_digits(slot);
        slot.resize(L);
    }
    trim(r);
    return r;
}

void school(const Field& F, const Fe* a, size_t na, const Fe* b, size_t nb, Fe* out) {
    // out has na+nb-1 zeroed entries
    if (F.k() == 1 && F.p() < (std::uint64_t(1) << 32)) {
        const std::uint64_t p = F.p();
        std::vector<unsigned __int128> acc(na + nb - 1, 0);
        for (size_t i = 0; i < na; ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < nb; ++j) acc[i + j] += static_cast<unsigned __int128>(a[i] * b[j]);
        }
        for (size_t i = 0; i < acc.size(); ++i) out[i] = F.add(out[i], static_cast<Fe>(acc[i] % p));
        return;
    }
    for (size_t i = 0; i < na; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < nb; ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
}

void kara(const Field& F, const Fe* a, const Fe* b, size_t n, Fe* out) {
    // a, b length n; out length 2n-1 zeroed
    if (n <= 32) {
        school(F, a, n, b, n, out);
        return;
    }
    size_t h = n / 2, hi = n - h;
    std::vector<Fe> z0(2 * h - 1, 0), z2(2 * hi - 1, 0), z1(2 * hi - 1, 0);
    kara(F, a, b, h, z0.data());
    kara(F, a + h, b + h, hi, z2.data());
    std::vector<Fe> sa(hi, 0), sb(hi, 0);
    for (size_t i = 0; i < hi; ++i) {
        sa[i] = F.add(a[h + i], i < h ? a[i] : 0);
        sb[i] = F.add(b[h + i], i < h ? b[i] : 0);
    }
    kara(F, sa.data(), sb.data(), hi, z1.data());
    for (size_t i = 0; i < z1.size(); ++i) {
        Fe v = z1[i];
        if (i < z0.size()) v = F.sub(v, z0[i]);
        v = F.sub(v, z2[i]);
        z1[i] = v;
    }
    for (size_t i = 0; i < z0.size(); ++i) out[i] = F.add(out[i], z0[i]);
    for (size_t i = 0; i < z1.size(); ++i) out[i + h] = F.add(out[i + h], z1[i]);
    for (size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = F.add(out[i + 2 * h], z2[i]);
}

UPoly mul_generic(const Field& F, const UPoly& a, const UPoly& b) {
    size_t na = a.size(), nb = b.size();
    UPoly r(na + nb - 1, 0);
    if (std::min(na, nb) <= 32) {
        school(F, a.data(), na, b.data(), nb, r.data());
        trim(r);
        return r;
    }
    // split the longer operand into blocks of the shorter length
    const UPoly& L = na >= nb ? a : b;
    const UPoly& S = na >= nb ? b : a;
    size_t n = S.size();
    std::vector<Fe> blk(n), tmp(2 * n - 1);
    for (size_t off = 0; off < L.size(); off += n) {
        std::fill(blk.begin(), blk.end(), 0);
        size_t len = std::min(n, L.size() - off);
        std::copy(L.begin() + off, L.begin() + off + len, blk.begin());
        std::fill(tmp.begin(), tmp.end(), 0);
        kara(F, blk.data(), S.data(), n, tmp.data());
        for (size_t i = 0; i < tmp.size() && off + i < r.size(); ++i) r[off + i] = F.add(r[off + i], tmp[i]);
    }
    trim(r);
    return r;
}

// Inverse of a power series with a[0] != 0, modulo x^n.
UPoly series_inv(const Field& F, const UPoly& a, size_t n) {
    UPoly g{F.inv(a[0])};
    size_t cur = 1;
    while (cur < n) {
        size_t nxt = std::min(2 * cur, n);
        UPoly at(a.begin(), a.begin() + std::min(a.size(), nxt));
        UPoly e = mul_trunc(F, at, g, nxt);  // a*g = 1 + O(x^cur)
        // g <- g*(2 - a*g)
        for (auto& c : e) c = F.neg(c);
        if (e.empty()) e.push_back(0);
        e[0] = F.add(e[0], F.from_int(2));
        g = mul_trunc(F, g, e, nxt);
        g.resize(nxt, 0);
        cur = nxt;
    }
    g.resize(n, 0);
    return g;
}

}  // namespace

void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

UPoly neg(const Field& F, const UPoly& a) {
    UPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
}

UPoly scale(const Field& F, const UPoly& a, Fe c) {
    if (c == 0) return {};
    UPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return r;
}

UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    size_t mn = std::min(a.size(), b.size());
    if (mn > 48 && ntt_eligible(F) && (a.size() + b.size()) * (2 * F.k() - 1) < (std::size_t(1) << 23))
        return mul_ntt(F, a, b);
    return mul_generic(F, a, b);
}

UPoly mul_trunc(const Field& F, const UPoly& a, const UPoly& b, size_t n) {
    UPoly at(a.begin(), a.begin() + std::min(a.size(), n));
    UPoly bt(b.begin(), b.begin() + std::min(b.size(), n));
    UPoly r = mul(F, at, bt);
    if (r.size() > n) r.resize(n);
    trim(r);
    return r;
}

void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.empty()) fail(ErrorKind::DivisionByZeroPoly, "univariate division by zero");
    if (a.size() < b.size()) {
        q.clear();
        r = a;
        trim(r);
        return;
    }
    size_t nq = a.size() - b.size() + 1;
    if (nq > 64 && b.size() > 64) {
        // reversed series division
        UPoly ra(a.rbegin(), a.rend()), rb(b.rbegin(), b.rend());
        UPoly inv = series_inv(F, rb, nq);
        UPoly rq = mul_trunc(F, ra, inv, nq);
        rq.resize(nq, 0);
        q.assign(rq.rbegin(), rq.rend());
        trim(q);
        r = sub(F, a, mul(F, q, b));
        return;
    }
    r = a;
    q.assign(nq, 0);
    Fe il = F.inv(b.back());
    size_t db = b.size() - 1;
    for (size_t i = a.size(); i-- > db;) {
        Fe c = r[i];
        if (c == 0) continue;
        c = F.mul(c, il);
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
}

UPoly mod(const Field& F, const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(F, a, b, q, r);
    return r;
}

UPoly quo(const Field& F, const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(F, a, b, q, r);
    return q;
}

std::optional<UPoly> exact_div(const Field& F, const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(F, a, b, q, r);
    if (!r.empty()) return std::nullopt;
    return q;
}

UPoly monic(const Field& F, const UPoly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

UPoly gcd(const Field& F, UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

UPoly xgcd(const Field& F, const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
    UPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        UPoly q, r;
        divmod(F, r0, r1, q, r);
        UPoly s2 = sub(F, s0, mul(F, q, s1));
        UPoly t2 = sub(F, t0, mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s.clear();
        t.clear();
        return r0;
    }
    Fe il = F.inv(r0.back());
    s = scale(F, s0, il);
    t = scale(F, t0, il);
    return scale(F, r0, il);
}

UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m) { return mod(F, mul(F, a, b), m); }

UPoly powmod(const Field& F, const UPoly& a, std::uint64_t e, const UPoly& m) {
    UPoly r = mod(F, UPoly{1}, m);
    UPoly b = mod(F, a, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, b, m);
        e >>= 1;
        if (e) b = mulmod(F, b, b, m);
    }
    return r;
}

UPoly deriv(const Field& F, const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i % F.p())));
    trim(r);
    return r;
}

Fe eval(const Field& F, const UPoly& a, Fe x) {
    Fe acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

UPoly from_roots(const Field& F, const std::vector<Fe>& roots) {
    UPoly r{1};
    for (Fe a : roots) {
        UPoly nr(r.size() + 1, 0);
        for (size_t i = 0; i < r.size(); ++i) {
            nr[i + 1] = F.add(nr[i + 1], r[i]);
            nr[i] = F.sub(nr[i], F.mul(r[i], a));
        }
        r = std::move(nr);
    }
    return r;
}

UPoly interpolate(const Field& F, const std::vector<Fe>& xs, const std::vector<Fe>& ys) {
    size_t n = xs.size();
    // Newton divided differences
    std::vector<Fe> c(ys.begin(), ys.end());
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            c[i] = F.div(F.sub(c[i], c[i - 1]), F.sub(xs[i], xs[i - j]));
            if (i == j) break;
        }
    UPoly r;
    for (size_t i = n; i-- > 0;) {
        // r = r*(x - xs[i]) + c[i]
        UPoly nr(r.size() + 1, 0);
        for (size_t t = 0; t < r.size(); ++t) {
            nr[t + 1] = F.add(nr[t + 1], r[t]);
            nr[t] = F.sub(nr[t], F.mul(r[t], xs[i]));
        }
        nr[0] = F.add(nr[0], c[i]);
        r = std::move(nr);
    }
    trim(r);
    return r;
}

UPoly pth_root(const Field& F, const UPoly& a) {
    const std::uint64_t p = F.p();
    UPoly r;
    for (size_t i = 0; i < a.size(); i += p) r.push_back(F.pth_root(a[i]));
    trim(r);
    return r;
}

}  // namespace sf::up
