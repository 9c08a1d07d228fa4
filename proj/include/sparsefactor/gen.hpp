#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sparsefactor/blackbox.hpp"
#include "sparsefactor/dpoly.hpp"
#include "sparsefactor/ff.hpp"
#include "sparsefactor/poly.hpp"

namespace sf {

// ---- parameter table

enum class Task {
    SPARSE_INTERP,
    DIVISOR_ENUM,
    PRIMDIV_COPRIME,
    CHAR0_COPRIME,
    DELTA_K,
    MULTIQUAD,
    RATIONAL_INTERP,
    RATIONAL_INTERP_MULTI,
};

const char* task_name(Task t);
std::optional<Task> task_from_name(const std::string& s);

// Exponent of D in the RATIONAL_INTERP_MULTI row.
constexpr int kMultiDExponent = 2;

struct MInputs {
    int n = 1, s = 1, d = 1, k = 1, ell = 1, D = 1;
    CharClass cc = CharClass::LARGE;
};

// Exact table value in decimal.
std::string m_for_string(Task t, const MInputs& in);
// Throws Overflow (message carries the required m) above 2^63 - 1.
std::uint64_t m_for(Task t, const MInputs& in);

// ---- generator

class Generator {
public:
    // Throws FieldTooSmall when |F| < m + 2n + n*d*q.
    static Generator build(std::uint64_t m, int n, const FieldPtr& F, int d);
    static std::uint64_t required_size(std::uint64_t m, int n, int d);

    // Coordinate i becomes the free input u; v is fixed to gamma_i.
    Generator revive(int i) const;

    std::uint64_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    int n() const { return n_; }
    int d() const { return d_; }
    const FieldPtr& field() const { return F_; }
    std::optional<int> revived() const { return revived_; }
    std::uint64_t t_size() const { return std::uint64_t(n_) * d_ * q_; }
    int arity() const { return revived_ ? 5 : 6; }

    // 1-based indices as in the set definitions.
    Fe alpha(std::uint64_t k) const { return F_->element(k - 1); }
    Fe beta(int j) const { return F_->element(m_ + j - 1); }
    Fe gamma(int j) const { return F_->element(m_ + n_ + j - 1); }
    Fe delta(std::uint64_t t) const { return F_->element(m_ + 2 * n_ + t - 1); }

    // A_1(y), ..., A_m(y) in the target of emb.
    std::vector<Fe> lagrange_A(const Embedding& emb, Fe y) const;
    // B_j(z) (or C_j(v) with use_c).
    Fe lagrange_BC(const Embedding& emb, int j, Fe z, bool use_c) const;

    std::vector<Fe> eval(const std::vector<Fe>& in) const;
    std::vector<Fe> eval(const Embedding& emb, const std::vector<Fe>& in) const;

private:
    struct Shared {
        std::once_flag once;
        std::vector<Fe> wA;  // barycentric weights of A over F
    };
    const std::vector<Fe>& weights() const;

    FieldPtr F_;
    std::uint64_t m_ = 1, q_ = 2;
    int n_ = 1, d_ = 1;
    std::optional<int> revived_;
    std::shared_ptr<Shared> sh_;
};

std::vector<Fe> eval_G(const Generator& g, const std::vector<Fe>& inputs);

// Dense polynomial in the generator inputs (x,y,z,w,u[,v]) followed by the
// coordinates listed in extra_vars, which are left free.
SparsePoly compose_dense(const BlackBox& b, const Generator& g, const std::vector<int>& extra_vars = {});

// Recovers the declared (n,s,d)-sparse polynomial behind b from the image of
// the KS generator with m = (nds)^2.
SparsePoly sparse_reconstruct(const BlackBox& b, int s, int d);

// ---- faces
//
// A face fixes y = alpha_k, z = beta_j, w = 1 in a revived generator: box
// coordinate t goes to x^(k^(t+1) mod q), to the revived input u, to a free
// variable Y standing for a kept coordinate, or to 0.  Composed face images
// are dense polynomials over a working field E in the variables (x, u, Y).

enum class SlotKind : std::uint8_t { Weight, U, Y, Zero };

struct Slot {
    SlotKind kind = SlotKind::Weight;
    std::uint64_t w = 0;
};

constexpr int kFaceX = 0, kFaceU = 1, kFaceY = 2;

struct FaceSpec {
    int u = -1;
    int y = -1;
    std::vector<int> zero;
    bool operator<(const FaceSpec& o) const;
};

struct Face {
    FaceSpec spec;
    std::vector<Slot> slots;
    std::uint64_t m = 1, q = 2, k = 1;
    bool certified = true;
    int D = 1;
    FieldPtr E;
    Embedding emb;
    // x exponent -> index into the [0,D]^V box of weight coordinates, -1 if none.
    std::shared_ptr<const std::vector<std::int32_t>> decode;
    std::vector<int> weight_coords;
};

// Injective on [0,D]^V as an integer linear form.
bool weights_injective(const std::vector<std::uint64_t>& w, int D);
std::vector<std::uint64_t> ks_weights(std::uint64_t k, std::uint64_t q, const std::vector<int>& coords);
// Smallest k in [1, m] whose weights are injective, with q = first prime > m.
std::optional<std::uint64_t> certified_shift(std::uint64_t m, const std::vector<int>& coords, int D);

struct CertifiedM {
    std::uint64_t m, q, k;
};
// Smallest m admitting a certified shift for the coordinate set.
CertifiedM m_cert(const std::vector<int>& coords, int D);

// Builds faces, composes boxes and explicit polynomials through them, and
// decodes face images.  Thread-safe.
class FaceEngine {
public:
    // d: declared factor degree; D: box size to certify; deg_cap: bound on the
    // individual degree of anything composed.  m_override replaces the
    // certified choice of m.
    FaceEngine(FieldPtr F, int n, int d, int D, int deg_cap, std::optional<std::uint64_t> m_override = {});

    const FieldPtr& field() const { return F_; }
    int nvars() const { return n_; }
    int D() const { return D_; }

    const Face& face(const FaceSpec& spec);
    DPoly compose(const BoxPtr& b, const Face& f);
    DPoly compose(const SparsePoly& p, const Face& f) const;
    // Inverse of the weight map on the face's box; coefficients pulled back to F.
    std::optional<SparsePoly> decode(const DPoly& img, const Face& f) const;

    // Largest m used by any face so far, and whether every face was certified.
    std::uint64_t m_used() const;
    std::uint64_t q_used() const;
    bool all_certified() const;
    size_t face_count() const;

private:
    FieldPtr F_;
    int n_, d_, D_, deg_cap_;
    std::optional<std::uint64_t> override_;
    mutable std::mutex mu_;
    std::map<FaceSpec, std::unique_ptr<Face>> faces_;
    std::map<std::pair<const BlackBox*, const Face*>, std::pair<BoxPtr, DPoly>> cache_;
};

// Grid interpolation of (x,u,Y) -> value with the given degree bounds; nodes
// are the first canonical elements of E.  One additional point off the grid is
// checked; a mismatch raises DegreeBoundExceeded.
DPoly interpolate_grid(const FieldPtr& E, const std::vector<int>& degs,
                       const std::function<Fe(const std::vector<Fe>&)>& value);

}  // namespace sf
