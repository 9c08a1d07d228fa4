#include "sparsefactor/algos.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "sparsefactor/errors.hpp"

namespace sf {

std::uint64_t AlgoParams::S() const {
    int lg = 1;
    while ((1 << lg) < n) ++lg;
    const long e = static_cast<long>(S_exponent) * d * d * std::max(1, lg);
    unsigned __int128 v = 1;
    for (long i = 0; i < e; ++i) {
        v *= static_cast<unsigned>(std::max(1, s));
        if (v > (std::uint64_t(1) << 40)) return std::uint64_t(1) << 40;
    }
    return static_cast<std::uint64_t>(v);
}

void RunInfo::absorb(const FaceEngine& e) {
    m = std::max(m, e.m_used());
    q = std::max(q, e.q_used());
    certified = certified && e.all_certified();
    faces += e.face_count();
}

int coprime_box(int d, CharClass cc) { return cc == CharClass::LARGE ? 8 * d * d : 8 * d * d * d * d; }

namespace {

// ---- small helpers

struct Meter {
    std::vector<BoxPtr> boxes;
    std::vector<std::uint64_t> start;
    RunInfo* info;
    Meter(std::vector<BoxPtr> bs, RunInfo* i) : boxes(std::move(bs)), info(i) {
        for (auto& b : boxes) start.push_back(b->query_count());
    }
    ~Meter() {
        if (!info) return;
        for (size_t i = 0; i < boxes.size(); ++i) info->queries += boxes[i]->query_count() - start[i];
    }
};

void absorb(RunInfo* info, const FaceEngine& e) {
    if (info) info->absorb(e);
}

int cap_of(const BlackBox& b) {
    int c = 1;
    for (int i = 0; i < b.nvars(); ++i) c = std::max(c, b.deg_bound(i));
    return c;
}

int cap_of(const SparsePoly& f) { return std::max(1, f.is_zero() ? 0 : f.max_individual_degree()); }

CharClass cc_of(const FieldPtr& F, int d) { return F->char_class(d); }

SparsePoly one(const FieldPtr& F, int n) { return SparsePoly::constant(F, n, 1); }

DPoly pp_u(const DPoly& H) { return primitive_in(H, kFaceU); }

void sort_unique(std::vector<SparsePoly>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool by_degree(const SparsePoly& a, const SparsePoly& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a < b;
}

std::uint64_t sat_pow(std::uint64_t b, long e) {
    unsigned __int128 v = 1;
    for (long i = 0; i < e; ++i) {
        v *= b;
        if (v > (std::uint64_t(1) << 40)) return std::uint64_t(1) << 40;
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic points on the image of a small generator, over an extension.
struct ImagePoints {
    WorkingField W;
    std::vector<std::vector<Fe>> pts;
};

ImagePoints image_points(const FieldPtr& F, int n, int d, int count) {
    const std::uint64_t m = 2;
    ImagePoints ip;
    ip.W = working_extension(F, std::max<std::uint64_t>(Generator::required_size(m, n, d) + 64, 256));
    Generator g = Generator::build(m, n, ip.W.E, d);
    std::uint64_t seed = 0x5eed;
    for (int c = 0; c < count; ++c) {
        std::vector<Fe> in(6);
        for (auto& v : in) v = ip.W.E->element(splitmix(seed) % ip.W.E->size());
        ip.pts.push_back(g.eval(in));
    }
    return ip;
}

Fe eval_in(const SparsePoly& f, const Embedding& emb, const std::vector<Fe>& pt) {
    return map_field(f, emb).eval(pt);
}

// First point of F^n (lexicographic) where pred holds.
std::optional<std::vector<Fe>> find_point(const FieldPtr& F, int n, const std::function<bool(const std::vector<Fe>&)>& pred) {
    std::vector<Fe> pt(n, 0);
    const std::uint64_t q = F->size();
    for (long it = 0; it < 200000; ++it) {
        if (pred(pt)) return pt;
        int i = 0;
        while (i < n && pt[i] + 1 == q) pt[i++] = 0;
        if (i == n) break;
        ++pt[i];
    }
    return std::nullopt;
}

// Enumerates exponent vectors k with k_j <= mult_j and sum k_j cost_j <= budget.
void multisets(const std::vector<int>& mult, const std::vector<int>& cost, int budget,
               const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> k(mult.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t j, int left) {
        if (j == mult.size()) {
            fn(k);
            return;
        }
        for (int t = 0; t <= mult[j] && t * cost[j] <= left; ++t) {
            k[j] = t;
            rec(j + 1, left - t * cost[j]);
        }
        k[j] = 0;
    };
    rec(0, budget);
}

// ---- faces

std::vector<int> live_vars_box(const BoxPtr& g, const AlgoParams& P, RunInfo* info) {
    FaceEngine eng(g->field(), g->nvars(), P.d, P.d, cap_of(*g), P.m_override);
    std::vector<int> live;
    for (int i = 0; i < g->nvars(); ++i) {
        if (g->deg_bound(i) == 0) continue;
        FaceSpec sp;
        sp.u = i;
        DPoly img = eng.compose(g, eng.face(sp));
        if (img.deg(kFaceU) > 0) live.push_back(i);
    }
    absorb(info, eng);
    return live;
}

FaceSpec y_face(int n, int x0, const std::vector<int>& live) {
    FaceSpec sp;
    sp.y = x0;
    for (int t = 0; t < n; ++t)
        if (std::find(live.begin(), live.end(), t) == live.end()) sp.zero.push_back(t);
    return sp;
}

bool divides_eng(FaceEngine& eng, const BoxPtr& f, const BoxPtr& g) {
    const int n = f->nvars();
    for (int i = 0; i < n; ++i) {
        FaceSpec sp;
        sp.u = i;
        const Face& fc = eng.face(sp);
        DPoly H = eng.compose(f, fc);
        DPoly G = eng.compose(g, fc);
        if (H.is_zero()) return G.is_zero();
        if (G.is_zero()) continue;
        DPoly pp = pp_u(H);
        if (pp.deg(kFaceU) <= 0) continue;
        if (!divides(pp, G)) return false;
    }
    return true;
}

// Candidate divisors of g recovered from its face image with x0 -> Y.
// cset: candidates for the x0-free part up to a monomial; dy: bound on the
// x0-degree; dexp: exponent of the variable product clearing that monomial.
std::vector<SparsePoly> lift_candidates(FaceEngine& eng, const Face& face, const DPoly& ghat, int x0,
                                        const std::vector<int>& live, const std::vector<SparsePoly>& cset, int dy,
                                        int dexp, const FactorConfig& fcfg) {
    const FieldPtr& F = eng.field();
    const int n = eng.nvars();
    const FieldPtr& E = face.E;
    std::vector<SparsePoly> out;
    if (ghat.is_zero()) fail(ErrorKind::ZeroPolynomial, "zero face image");
    auto gc = ghat.coeffs_in(kFaceY);
    const DPoly& f0 = gc[0];
    if (f0.is_zero()) fail(ErrorKind::InternalError, "free term vanished on the face");
    // normalized image 1 + sum g_i f0^(i-1) Y^i
    std::vector<DPoly> nc(gc.size());
    nc[0] = DPoly::constant(E, 3, 1);
    DPoly f0pow = DPoly::constant(E, 3, 1);
    for (size_t i = 1; i < gc.size(); ++i) {
        nc[i] = gc[i] * f0pow;
        f0pow = f0pow * f0;
    }
    DPoly N = DPoly::from_coeffs(nc, kFaceY, E, 3);
    N.normalize();
    std::vector<DPoly> facs;
    std::vector<int> mult, cost;
    if (N.deg(kFaceY) > 0) {
        DFactorization fz = factor_dense(N, fcfg);
        for (auto& [P, e] : fz.factors) {
            int dyP = P.deg(kFaceY);
            if (dyP <= 0) continue;
            auto pc = P.coeffs_in(kFaceY);
            if (!pc[0].is_constant() || pc[0].constant_value() == 0) continue;
            facs.push_back(scale(P, E->inv(pc[0].constant_value())));
            mult.push_back(e);
            cost.push_back(dyP);
        }
    }
    SparsePoly prodx = one(F, n);
    for (int t : live)
        if (t != x0) prodx = prodx * SparsePoly::var(F, n, t);
    const SparsePoly clear = pow(prodx, static_cast<unsigned>(dexp));
    std::vector<DPoly> f0pows = {DPoly::constant(E, 3, 1)};
    std::vector<std::pair<SparsePoly, DPoly>> Bs;
    for (auto& c : cset) {
        SparsePoly B = clear * c;
        Bs.emplace_back(B, eng.compose(B, face));
    }
    multisets(mult, cost, dy, [&](const std::vector<int>& k) {
        DPoly h = DPoly::constant(E, 3, 1);
        for (size_t j = 0; j < k.size(); ++j)
            for (int r = 0; r < k[j]; ++r) h = h * facs[j];
        auto a = h.coeffs_in(kFaceY);
        while (f0pows.size() < a.size()) f0pows.push_back(f0pows.back() * f0);
        for (auto& [B, Bh] : Bs) {
            SparsePoly cand = B;
            bool ok = true;
            for (size_t j = 1; j < a.size() && ok; ++j) {
                auto qd = exact_div(Bh * a[j], f0pows[j]);
                if (!qd) {
                    ok = false;
                    break;
                }
                auto e = eng.decode(*qd, face);
                if (!e) {
                    ok = false;
                    break;
                }
                Mono xe(n, 0);
                xe[x0] = static_cast<std::uint32_t>(j);
                cand = cand + mul_monomial(*e, xe);
            }
            if (!ok || cand.is_zero()) continue;
            cand = canonical(divide_monomial(cand, largest_monomial_divisor(cand)));
            out.push_back(cand);
        }
    });
    sort_unique(out);
    return out;
}

// ---- explicit divisor recursion

struct ExplicitDiv {
    const AlgoParams& P;
    RunInfo* info;
    std::uint64_t sbound;
    std::uint64_t explode;

    // Monomial-free divisors of a monomial-free g with at most sbound terms.
    std::vector<SparsePoly> run(const SparsePoly& g) {
        const FieldPtr& F = g.field();
        const int n = g.nvars();
        if (g.is_constant()) return {one(F, n)};
        std::vector<int> live = g.support();
        const int x0 = live.back();
        SparsePoly f0 = substitute(g, x0, 0);
        SparsePoly g0 = canonical(divide_monomial(f0, largest_monomial_divisor(f0)));
        std::vector<SparsePoly> cset = run(g0);
        if (cset.size() > explode) fail(ErrorKind::CandidateExplosion, "too many divisors of the free part");
        const int dg = g.individual_degree(x0);
        FaceEngine eng(F, n, P.d, 2 * P.d, cap_of(g), P.m_override);
        const Face& face = eng.face(y_face(n, x0, live));
        DPoly ghat = eng.compose(g, face);
        auto cands = lift_candidates(eng, face, ghat, x0, live, cset, std::min(dg, P.d), P.d, P.fcfg);
        absorb(info, eng);
        std::vector<SparsePoly> out;
        for (auto& h : cands) {
            if (h.sparsity() > sbound || (!h.is_constant() && h.max_individual_degree() > P.d)) continue;
            if (exact_div(g, h)) out.push_back(h);
        }
        for (auto& c : cset)
            if (exact_div(g, c)) out.push_back(c);
        sort_unique(out);
        return out;
    }
};

// ---- box divisor recursion

struct BoxDiv {
    const AlgoParams& P;
    RunInfo* info;
    std::uint64_t sbound;
    std::uint64_t explode;

    std::vector<SparsePoly> run(const BoxPtr& g) {
        const FieldPtr& F = g->field();
        const int n = g->nvars();
        std::vector<int> live = live_vars_box(g, P, info);
        if (live.empty()) return {one(F, n)};
        const int x0 = live.back();
        StrippedMono st = strip_monomial(restrict_zero(g, x0));
        std::vector<SparsePoly> cset = run(st.g);
        if (cset.size() > explode) fail(ErrorKind::CandidateExplosion, "too many divisors of the free part");
        FaceEngine eng(F, n, P.d, 2 * P.d, cap_of(*g), P.m_override);
        const Face& face = eng.face(y_face(n, x0, live));
        DPoly ghat = eng.compose(g, face);
        const int dg = ghat.deg(kFaceY);
        auto cands = lift_candidates(eng, face, ghat, x0, live, cset, std::min(dg, P.d), P.d, P.fcfg);
        absorb(info, eng);
        FaceEngine deng(F, n, P.d, coprime_box(P.d, cc_of(F, P.d)), std::max(cap_of(*g), P.d), P.m_override);
        std::vector<SparsePoly> out;
        auto keep = [&](const SparsePoly& h) {
            if (h.sparsity() > sbound || (!h.is_constant() && h.max_individual_degree() > P.d)) return;
            if (divides_eng(deng, make_explicit(h), g)) out.push_back(h);
        };
        for (auto& h : cands) keep(h);
        for (auto& c : cset) keep(c);
        absorb(info, deng);
        sort_unique(out);
        return out;
    }
};

// ---- factor-class recursion (multiquadratic and general)

struct ClassFactors {
    const AlgoParams& P;
    RunInfo* info;
    int dcls;              // individual degree of the class
    std::uint64_t sbound;  // sparsity of the class

    // Irreducible factors in the class of a monomial-free g.
    std::vector<SparsePoly> run(const BoxPtr& g) {
        const FieldPtr& F = g->field();
        const int n = g->nvars();
        std::vector<int> live = live_vars_box(g, P, info);
        if (live.empty()) return {};
        const int x0 = live.back();
        StrippedMono st = strip_monomial(restrict_zero(g, x0));
        std::vector<SparsePoly> Fset = run(st.g);
        std::vector<int> t;
        for (auto& phi : Fset) t.push_back(multiplicity_of(phi, st.g, P, info));
        // products of the free-part factors within the class bounds
        std::vector<SparsePoly> cset;
        std::function<void(size_t, SparsePoly)> rec = [&](size_t j, SparsePoly c) {
            if (j == Fset.size()) {
                cset.push_back(c);
                return;
            }
            for (int k = 0; k <= t[j]; ++k) {
                if (k > 0) {
                    c = c * Fset[j];
                    if (c.max_individual_degree() > dcls || c.sparsity() > sbound) break;
                }
                rec(j + 1, c);
                if (cset.size() > 200000) fail(ErrorKind::CandidateExplosion, "too many free-part candidates");
            }
        };
        rec(0, one(F, n));
        sort_unique(cset);
        FaceEngine eng(F, n, P.d, 2 * dcls, cap_of(*g), P.m_override);
        const Face& face = eng.face(y_face(n, x0, live));
        DPoly ghat = eng.compose(g, face);
        const int dg = ghat.deg(kFaceY);
        auto cands = lift_candidates(eng, face, ghat, x0, live, cset, std::min(dg, dcls), dcls, P.fcfg);
        absorb(info, eng);
        for (auto& phi : Fset) cands.push_back(phi);
        sort_unique(cands);
        FaceEngine deng(F, n, P.d, coprime_box(P.d, cc_of(F, P.d)), std::max(cap_of(*g), dcls), P.m_override);
        std::vector<SparsePoly> found;
        for (auto& h : cands) {
            if (h.is_constant() || h.sparsity() > sbound || h.max_individual_degree() > dcls) continue;
            if (divides_eng(deng, make_explicit(h), g)) found.push_back(h);
        }
        absorb(info, deng);
        // irreducible: no other found candidate divides it
        std::sort(found.begin(), found.end(), by_degree);
        std::vector<SparsePoly> irr;
        for (size_t a = 0; a < found.size(); ++a) {
            bool red = false;
            for (size_t b = 0; b < found.size() && !red; ++b)
                if (b != a && found[b].total_degree() < found[a].total_degree() && exact_div(found[a], found[b]))
                    red = true;
            if (!red) irr.push_back(found[a]);
        }
        sort_unique(irr);
        return irr;
    }
};

void add_monomial_factors(Factorization& fz, const Mono& M, const FieldPtr& F, int n) {
    for (int i = 0; i < n; ++i)
        if (M[i]) fz.factors.emplace_back(SparsePoly::var(F, n, i), static_cast<int>(M[i]));
}

// unit of f relative to the product of the factors, from a point
Fe unit_from_box(const BoxPtr& f, const Factorization& fz) {
    const FieldPtr& F = f->field();
    const int n = f->nvars();
    auto prod_at = [&](const Embedding& emb, const std::vector<Fe>& pt) {
        const Field& E = *emb.to();
        Fe v = 1;
        for (auto& [phi, e] : fz.factors) v = E.mul(v, E.pow(eval_in(phi, emb, pt), static_cast<std::uint64_t>(e)));
        return v;
    };
    Embedding id = Embedding::identity(F);
    auto pt = find_point(F, n, [&](const std::vector<Fe>& p) { return prod_at(id, p) != 0; });
    if (pt) return F->div(f->query(*pt), prod_at(id, *pt));
    ImagePoints ip = image_points(F, n, 1, 8);
    for (auto& p : ip.pts) {
        Fe pv = prod_at(ip.W.emb, p);
        if (pv == 0) continue;
        auto u = ip.W.emb.pull(ip.W.E->div(f->query(ip.W.emb, p), pv));
        if (!u) fail(ErrorKind::HypothesisViolation, "unit outside the base field");
        return *u;
    }
    fail(ErrorKind::InternalError, "no point avoiding the factors");
}

// f == unit * prod on generator-image points, and degree accounting
bool verify_product(const BoxPtr& f, const Factorization& fz, const AlgoParams& P, RunInfo* info) {
    const FieldPtr& F = f->field();
    const int n = f->nvars();
    FaceEngine eng(F, n, P.d, P.d, cap_of(*f), P.m_override);
    for (int i = 0; i < n; ++i) {
        int want = 0;
        for (auto& [phi, e] : fz.factors) want += e * std::max(0, phi.is_zero() ? 0 : phi.individual_degree(i));
        if (f->deg_bound(i) == 0) {
            if (want != 0) return false;
            continue;
        }
        FaceSpec sp;
        sp.u = i;
        if (eng.compose(f, eng.face(sp)).deg(kFaceU) != want) return false;
    }
    absorb(info, eng);
    ImagePoints ip = image_points(F, n, P.d, 50);
    const Field& E = *ip.W.E;
    for (auto& p : ip.pts) {
        Fe v = ip.W.emb.map(fz.unit);
        for (auto& [phi, e] : fz.factors) v = E.mul(v, E.pow(eval_in(phi, ip.W.emb, p), static_cast<std::uint64_t>(e)));
        if (v != f->query(ip.W.emb, p)) return false;
    }
    return true;
}

template <class Fn>
auto with_escalation(const AlgoParams& P, RunInfo* info, Fn run) -> decltype(run(P, info)) {
    if (!P.escalate || P.m_override) return run(P, info);
    for (std::uint64_t m = 2; m <= 4096; m *= 2) {
        AlgoParams Q = P;
        Q.m_override = m;
        RunInfo local;
        try {
            auto r = run(Q, &local);
            if (info) {
                local.rung = m;
                *info = local;
            }
            return r;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UsageError || e.kind() == ErrorKind::CharModeViolation) throw;
        }
    }
    return run(P, info);
}

}  // namespace

void normalize_factorization(Factorization& fz) {
    std::map<SparsePoly, int> acc;
    for (auto& [f, e] : fz.factors)
        if (e > 0) acc[f] += e;
    fz.factors.assign(acc.begin(), acc.end());
}

// ---- divisibility tests

bool divides(const BoxPtr& f, const BoxPtr& g, const AlgoParams& P, RunInfo* info) {
    if (f->nvars() != g->nvars()) fail(ErrorKind::ArityMismatch, "operands differ in arity");
    Meter meter({f, g}, info);
    const FieldPtr& F = f->field();
    FaceEngine eng(F, f->nvars(), P.d, coprime_box(P.d, cc_of(F, P.d)), std::max(cap_of(*f), cap_of(*g)),
                   P.m_override);
    bool r = divides_eng(eng, f, g);
    absorb(info, eng);
    return r;
}

int multiplicity_of(const SparsePoly& phi, const BoxPtr& f, const AlgoParams& P, RunInfo* info) {
    if (phi.is_constant()) fail(ErrorKind::UsageError, "multiplicity of a constant");
    Meter meter({f}, info);
    const FieldPtr& F = f->field();
    FaceEngine eng(F, f->nvars(), P.d, coprime_box(P.d, cc_of(F, P.d)), std::max(cap_of(*f), cap_of(phi)),
                   P.m_override);
    int best = INT_MAX;
    for (int i : phi.support()) {
        FaceSpec sp;
        sp.u = i;
        const Face& fc = eng.face(sp);
        DPoly H = pp_u(eng.compose(phi, fc));
        DPoly G = eng.compose(f, fc);
        if (G.is_zero()) fail(ErrorKind::ZeroPolynomial, "multiplicity in the zero polynomial");
        if (H.deg(kFaceU) <= 0) fail(ErrorKind::InternalError, "face lost the variable");
        best = std::min(best, divisibility_power(H, G));
        if (best == 0) break;
    }
    absorb(info, eng);
    return best;
}

bool is_complete_power(const BoxPtr& f, int e, const AlgoParams& P, RunInfo* info) {
    const FieldPtr& F = f->field();
    if (e < 2) fail(ErrorKind::UsageError, "power test needs e >= 2");
    if (cc_of(F, P.d) != CharClass::LARGE) fail(ErrorKind::CharModeViolation, "power test needs p > 2d");
    Meter meter({f}, info);
    const int n = f->nvars();
    FaceEngine eng(F, n, P.d, coprime_box(P.d, CharClass::LARGE), cap_of(*f), P.m_override);
    for (int i = 0; i < n; ++i) {
        FaceSpec sp;
        sp.u = i;
        DPoly G = eng.compose(f, eng.face(sp));
        if (G.is_zero()) return true;
        DPoly pp = pp_u(G);
        if (pp.deg(kFaceU) <= 0) continue;
        DFactorization fz = factor_dense(pp, P.fcfg);
        for (auto& [fac, k] : fz.factors)
            if (fac.deg(kFaceU) > 0 && k % e != 0) {
                absorb(info, eng);
                return false;
            }
    }
    absorb(info, eng);
    // the unit: f(a) = c h(a)^e with h(a) != 0 is an e-th power iff c is
    auto pt = find_point(F, n, [&](const std::vector<Fe>& p) { return f->query(p) != 0; });
    if (!pt) fail(ErrorKind::FieldTooSmall, "no point of the base field avoids the zero set");
    const std::uint64_t Q = F->size() - 1;
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(e), Q);
    return F->pow(f->query(*pt), Q / g) == 1;
}

// ---- rational interpolation

namespace {

SparsePoly recover_numerator(const BoxPtr& qbox, const BoxPtr& fj, const SparsePoly& b, const AlgoParams& P,
                             RunInfo* info) {
    const FieldPtr& F = qbox->field();
    const int n = qbox->nvars();
    FaceEngine eng(F, n, P.d, P.d, std::max({cap_of(*qbox), cap_of(*fj), cap_of(b)}), P.m_override);
    FaceSpec sp;
    const Face& fc = eng.face(sp);
    DPoly qh = eng.compose(qbox, fc), fh = eng.compose(fj, fc), bh = eng.compose(b, fc);
    absorb(info, eng);
    if (fh.is_zero()) fail(ErrorKind::ZeroPolynomial, "zero denominator product");
    auto ah = exact_div(qh * bh, fh);
    if (!ah) fail(ErrorKind::HypothesisViolation, "quotient image is not a polynomial");
    auto a = eng.decode(*ah, fc);
    if (!a) fail(ErrorKind::HypothesisViolation, "numerator image does not decode");
    // a f^j = qbox b on the generator image
    ImagePoints ip = image_points(F, n, P.d, 50);
    const Field& E = *ip.W.E;
    for (auto& p : ip.pts)
        if (E.mul(eval_in(*a, ip.W.emb, p), fj->query(ip.W.emb, p)) !=
            E.mul(qbox->query(ip.W.emb, p), eval_in(b, ip.W.emb, p)))
            fail(ErrorKind::HypothesisViolation, "reconstructed pair fails verification");
    return *a;
}

BoxPtr power_box(const BoxPtr& f, int j) {
    std::vector<BoxPtr> fs(j, f);
    return make_product(fs, f->d(), f->s());
}

}  // namespace

RationalResult rational_interpolate(const BoxPtr& qbox, const BoxPtr& f, const std::vector<SparsePoly>& Fset,
                                    const AlgoParams& P, RunInfo* info) {
    auto r = rational_interpolate_multi({qbox}, f, Fset, P, info);
    return {r.a[0], r.b};
}

RationalMultiResult rational_interpolate_multi(const std::vector<BoxPtr>& qboxes, const BoxPtr& f,
                                               const std::vector<SparsePoly>& Fset, const AlgoParams& P,
                                               RunInfo* info) {
    if (qboxes.empty()) fail(ErrorKind::UsageError, "no quotient boxes");
    std::vector<BoxPtr> all = qboxes;
    all.push_back(f);
    Meter meter(all, info);
    const FieldPtr& F = f->field();
    const int n = f->nvars();
    SparsePoly b = one(F, n);
    for (auto& phi : Fset) {
        const int t = multiplicity_of(phi, f, P, info);
        int k = 0;
        for (size_t j = 1; j <= qboxes.size(); ++j) {
            // phi^k | b iff phi^(t j - k + 1) does not divide a_j f^j / b
            const int v = multiplicity_of(phi, qboxes[j - 1], P, info);
            k = std::max(k, static_cast<int>(t * j) - v);
        }
        if (k > 0) b = b * pow(phi, static_cast<unsigned>(k));
    }
    b = canonical(b);
    RationalMultiResult out;
    out.b = b;
    for (size_t j = 1; j <= qboxes.size(); ++j)
        out.a.push_back(recover_numerator(qboxes[j - 1], j == 1 ? f : power_box(f, static_cast<int>(j)), b, P, info));
    return out;
}

// ---- divisor enumeration

DivisorSet sparse_divisors(const SparsePoly& f, const AlgoParams& P, RunInfo* info) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "divisors of zero");
    DivisorSet ds;
    ds.monomial = largest_monomial_divisor(f);
    SparsePoly g = canonical(divide_monomial(f, ds.monomial));
    ExplicitDiv run{P, info, static_cast<std::uint64_t>(P.s), sat_pow(P.s, P.d)};
    ds.divisors = run.run(g);
    return ds;
}

DivisorSet divisors_of_product(const BoxPtr& f, const AlgoParams& P, RunInfo* info) {
    const FieldPtr& F = f->field();
    if (cc_of(F, P.d) == CharClass::SMALL && f->kind() == BoxKind::Derived)
        fail(ErrorKind::CharModeViolation, "small characteristic needs a product of sparse polynomials");
    Meter meter({f}, info);
    StrippedMono st = strip_monomial(f);
    DivisorSet ds;
    ds.monomial = st.M;
    int lg = 0;
    while ((1 << lg) < P.ell) ++lg;
    BoxDiv run{P, info, static_cast<std::uint64_t>(P.s), sat_pow(P.s, static_cast<long>(P.d) * (2 + lg))};
    ds.divisors = run.run(st.g);
    return ds;
}

// ---- factorization

Factorization factor_nsd(const SparsePoly& f, const AlgoParams& P, RunInfo* info) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factorization of zero");
    return with_escalation(P, info, [&](const AlgoParams& Q, RunInfo* inf) {
        const FieldPtr& F = f.field();
        const int n = f.nvars();
        Factorization fz;
        Mono M = largest_monomial_divisor(f);
        SparsePoly g = canonical(divide_monomial(f, M));
        const std::uint64_t S = Q.S();
        ExplicitDiv run{Q, inf, S, sat_pow(S, Q.d)};
        std::vector<SparsePoly> divs = run.run(g);
        std::sort(divs.begin(), divs.end(), by_degree);
        std::set<std::string> keys;
        for (auto& h : divs) keys.insert(h.key());
        std::vector<SparsePoly> irr;
        for (auto& h : divs) {
            if (h.is_constant()) continue;
            bool red = false;
            for (auto& a : divs) {
                if (a.is_constant() || a.total_degree() >= h.total_degree()) continue;
                auto b = exact_div(h, a);
                if (b && keys.count(canonical(*b).key())) {
                    red = true;
                    break;
                }
            }
            if (!red) irr.push_back(h);
        }
        SparsePoly rem = g;
        for (auto& phi : irr) {
            int k = 0;
            while (auto q = exact_div(rem, phi)) {
                rem = *q;
                ++k;
            }
            if (k) fz.factors.emplace_back(phi, k);
        }
        if (!rem.is_constant()) fail(ErrorKind::SBudgetExceeded, "a factor exceeds the sparsity budget");
        add_monomial_factors(fz, M, F, n);
        fz.unit = f.lc();
        normalize_factorization(fz);
        if (expand(fz, F, n) != f) fail(ErrorKind::SBudgetExceeded, "remultiplication mismatch");
        return fz;
    });
}

Factorization factor_product_irreducibles(const BoxPtr& f, const AlgoParams& P, RunInfo* info) {
    Meter meter({f}, info);
    return with_escalation(P, info, [&](const AlgoParams& Q, RunInfo* inf) {
        const FieldPtr& F = f->field();
        const int n = f->nvars();
        DivisorSet ds = divisors_of_product(f, Q, inf);
        std::vector<SparsePoly> divs;
        for (auto& h : ds.divisors)
            if (!h.is_constant()) divs.push_back(h);
        std::sort(divs.begin(), divs.end(), by_degree);
        Factorization fz;
        for (size_t a = 0; a < divs.size(); ++a) {
            bool minimal = true;
            for (size_t b = 0; b < a && minimal; ++b)
                if (divs[b].total_degree() < divs[a].total_degree() && exact_div(divs[a], divs[b])) minimal = false;
            if (minimal) fz.factors.emplace_back(divs[a], multiplicity_of(divs[a], f, Q, inf));
        }
        add_monomial_factors(fz, ds.monomial, F, n);
        normalize_factorization(fz);
        fz.unit = unit_from_box(f, fz);
        if (!verify_product(f, fz, Q, inf)) fail(ErrorKind::HypothesisViolation, "remultiplication check failed");
        return fz;
    });
}

std::vector<std::pair<SparsePoly, int>> multiquadratic_factors(const BoxPtr& f, const AlgoParams& P, RunInfo* info) {
    Meter meter({f}, info);
    const FieldPtr& F = f->field();
    const int n = f->nvars();
    StrippedMono st = strip_monomial(f);
    ClassFactors run{P, info, 2, static_cast<std::uint64_t>(P.s)};
    std::vector<std::pair<SparsePoly, int>> out;
    for (auto& phi : run.run(st.g)) out.emplace_back(phi, multiplicity_of(phi, f, P, info));
    for (int i = 0; i < n; ++i)
        if (st.M[i]) out.emplace_back(SparsePoly::var(F, n, i), static_cast<int>(st.M[i]));
    std::sort(out.begin(), out.end());
    return out;
}

Factorization factor_product_general(const BoxPtr& f, const AlgoParams& P, RunInfo* info) {
    const FieldPtr& F = f->field();
    if (cc_of(F, P.d) == CharClass::SMALL && f->kind() == BoxKind::Derived)
        fail(ErrorKind::CharModeViolation, "small characteristic needs a product of sparse polynomials");
    Meter meter({f}, info);
    return with_escalation(P, info, [&](const AlgoParams& Q, RunInfo* inf) {
        const int n = f->nvars();
        StrippedMono st = strip_monomial(f);
        ClassFactors run{Q, inf, Q.d, Q.S()};
        Factorization fz;
        for (auto& phi : run.run(st.g)) fz.factors.emplace_back(phi, multiplicity_of(phi, f, Q, inf));
        add_monomial_factors(fz, st.M, F, n);
        normalize_factorization(fz);
        fz.unit = unit_from_box(f, fz);
        if (!verify_product(f, fz, Q, inf)) fail(ErrorKind::SBudgetExceeded, "factors do not account for the product");
        return fz;
    });
}

Audit divisor_count_audit(const SparsePoly& f, const AlgoParams& P, RunInfo* info) {
    Factorization fz = factor_nsd(f, P, info);
    Audit a;
    for (auto& [phi, e] : fz.factors) a.count += e;
    int lg = 0;
    while ((std::uint64_t(1) << lg) < static_cast<std::uint64_t>(std::max(1, P.s))) ++lg;
    a.bound = P.d * lg;
    a.ok = a.count <= a.bound;
    a.vertices = newton_vertices(f);
    a.vertices_ok = a.vertices <= static_cast<size_t>(std::max(1, P.s));
    return a;
}

}  // namespace sf
