#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparsefactor/errors.hpp"

namespace sf {

// An element of F_{p^k}, encoded as sum c_i p^i where c_i are the residues of
// the coefficients of t^i modulo the defining polynomial.  The encoding is
// canonical, and encoding order is the canonical enumeration of the field.
using Fe = std::uint64_t;

enum class CharClass { LARGE, SMALL };

bool is_prime_u64(std::uint64_t n);
std::uint64_t next_prime_above(std::uint64_t m);  // first prime > m, trial division

// Largest p^k for which extension tables are built.
constexpr std::uint64_t kMaxExtensionSize = std::uint64_t(1) << 22;
// Largest prime accepted for prime fields.
constexpr std::uint64_t kMaxPrime = std::uint64_t(1) << 62;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // F_p.  Throws NotPrime / SizeOverflow.
    static FieldPtr prime(std::uint64_t p);
    // F_{p^k} with the lexicographically first monic irreducible modulus.
    static FieldPtr extension(std::uint64_t p, int k);

    std::uint64_t p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t size() const { return q_; }
    // Monic modulus, low degree first, length k+1.  Empty when k == 1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    CharClass char_class(int d) const {
        return p_ > std::uint64_t(2) * std::uint64_t(d) ? CharClass::LARGE : CharClass::SMALL;
    }
    bool same(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }
    std::string describe() const;

    Fe zero() const { return 0; }
    Fe one() const { return 1; }
    Fe from_int(long long v) const;
    // Element with encoding i; i < size().
    Fe element(std::uint64_t i) const { return i; }
    bool valid(Fe a) const { return a < q_; }

    Fe add(Fe a, Fe b) const {
        if (k_ == 1) {
            Fe s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        return ext_add(a, b);
    }
    Fe neg(Fe a) const {
        if (a == 0) return 0;
        if (k_ == 1) return p_ - a;
        if (p_ == 2) return a;
        return exp_[log_[a] + neg_shift_];
    }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const {
        if (a == 0 || b == 0) return 0;
        if (k_ == 1) {
            if (p_ < (std::uint64_t(1) << 32)) return (a * b) % p_;
            return static_cast<Fe>((static_cast<unsigned __int128>(a) * b) % p_);
        }
        return exp_[std::uint64_t(log_[a]) + log_[b]];
    }
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, std::uint64_t e) const;
    // a^p
    Fe frobenius(Fe a) const { return k_ == 1 ? a : pow(a, p_); }
    // The unique b with b^p = a.
    Fe pth_root(Fe a) const;

    // Base-p digits (coefficients of 1, t, ..., t^{k-1}).
    std::vector<std::uint64_t> digits(Fe a) const;
    Fe from_digits(const std::vector<std::uint64_t>& d) const;

    FieldPtr prime_subfield() const;

private:
    Field() = default;
    Fe ext_add(Fe a, Fe b) const;
    void build_tables();

    std::uint64_t p_ = 2;
    int k_ = 1;
    std::uint64_t q_ = 2;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::int64_t> zech_;
    std::uint64_t neg_shift_ = 0;
};

// Embedding of a subfield F into E (F_{p^a} into F_{p^b}, a | b).
class Embedding {
public:
    Embedding() = default;
    static Embedding identity(FieldPtr F);
    static Embedding make(FieldPtr F, FieldPtr E);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }
    bool is_identity() const { return identity_; }
    Fe map(Fe a) const;
    // Preimage if a lies in the image of F.
    std::optional<Fe> pull(Fe a) const;

private:
    FieldPtr from_, to_;
    bool identity_ = true;
    std::vector<Fe> fwd_;
    std::vector<std::int64_t> back_;  // indexed by E encoding, -1 if not in image
};

// Smallest extension E of F with |E| >= min_size (E == F when F suffices).
// Throws FieldTooSmall when E would exceed kMaxExtensionSize.
struct WorkingField {
    FieldPtr E;
    Embedding emb;
};
WorkingField working_extension(const FieldPtr& F, std::uint64_t min_size);

// Irreducibility of a monic polynomial over F_p, coefficients low degree first.
bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& f);

}  // namespace sf
