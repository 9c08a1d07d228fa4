#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sparsefactor/ff.hpp"
#include "sparsefactor/poly.hpp"

namespace sf {

class BlackBox;
using BoxPtr = std::shared_ptr<const BlackBox>;

enum class BoxKind { Explicit, Product, Derived };

// Evaluation oracle for an n-variate polynomial over F.  Points may also be
// taken from an extension E of F through an embedding.
class BlackBox {
public:
    virtual ~BlackBox() = default;

    int nvars() const { return n_; }
    const FieldPtr& field() const { return F_; }
    int d() const { return d_; }
    int s() const { return s_; }
    int ell() const { return ell_; }
    // Bound on the individual degree in x_i.
    int deg_bound(int i) const { return degs_[i]; }
    const std::vector<int>& deg_bounds() const { return degs_; }
    int total_deg_bound() const { return total_; }
    virtual BoxKind kind() const = 0;
    virtual std::string describe() const = 0;

    std::uint64_t query_count() const { return count_.load(); }

    Fe query(const std::vector<Fe>& point) const;
    Fe query(const Embedding& emb, const std::vector<Fe>& point) const;

protected:
    BlackBox(FieldPtr F, int n, int d, int s, int ell, std::vector<int> degs, int total);
    virtual Fe eval(const Embedding& emb, const std::vector<Fe>& point) const = 0;
    // Queries charged per call of eval; derived boxes charge their sub-queries.
    virtual bool self_counted() const { return true; }
    void charge(std::uint64_t k) const { count_.fetch_add(k); }

    FieldPtr F_;
    int n_, d_, s_, ell_;
    std::vector<int> degs_;
    int total_;

private:
    mutable std::atomic<std::uint64_t> count_{0};
};

class ExplicitBox : public BlackBox {
public:
    // d and s default to the actual individual degree and sparsity.
    explicit ExplicitBox(SparsePoly f, int d = -1, int s = -1);
    BoxKind kind() const override { return BoxKind::Explicit; }
    std::string describe() const override;
    const SparsePoly& poly() const { return f_; }

protected:
    Fe eval(const Embedding& emb, const std::vector<Fe>& point) const override;

private:
    SparsePoly f_;
};

class ProductBox : public BlackBox {
public:
    ProductBox(std::vector<BoxPtr> factors, int d, int s);
    BoxKind kind() const override { return BoxKind::Product; }
    std::string describe() const override;
    const std::vector<BoxPtr>& factors() const { return fs_; }

protected:
    Fe eval(const Embedding& emb, const std::vector<Fe>& point) const override;

private:
    std::vector<BoxPtr> fs_;
};

class DerivedBox : public BlackBox {
public:
    using Sub = std::function<Fe(const std::vector<Fe>&)>;
    using Fn = std::function<Fe(const Embedding&, const std::vector<Fe>&, const Sub&)>;

    DerivedBox(BoxPtr parent, std::string what, std::vector<int> degs, int total, Fn fn);
    BoxKind kind() const override { return BoxKind::Derived; }
    std::string describe() const override { return what_; }
    const BoxPtr& parent() const { return parent_; }

protected:
    Fe eval(const Embedding& emb, const std::vector<Fe>& point) const override;
    bool self_counted() const override { return false; }

private:
    BoxPtr parent_;
    std::string what_;
    Fn fn_;
};

BoxPtr make_explicit(const SparsePoly& f, int d = -1, int s = -1);
BoxPtr make_product(const std::vector<SparsePoly>& fs, int d, int s);
BoxPtr make_product(std::vector<BoxPtr> fs, int d, int s);

// f(y f_0, x) / f_0 with x_0 slot reused for y.
BoxPtr normalize_access(const BoxPtr& b, int x0);
// f restricted to x_i = 0.
BoxPtr restrict_zero(const BoxPtr& b, int i);
// f / x_i^k through interpolation along x_i.
BoxPtr divide_var_power(const BoxPtr& b, int i, int k);
// f / M with the diagonal shift at points having zero coordinates.
BoxPtr divide_monomial(const BoxPtr& b, const Mono& M);

struct Stripped {
    int k = 0;
    BoxPtr g;
};
Stripped strip_var_power(const BoxPtr& b, int i);

struct StrippedMono {
    Mono M;
    BoxPtr g;
};
StrippedMono strip_monomial(const BoxPtr& b);

}  // namespace sf
