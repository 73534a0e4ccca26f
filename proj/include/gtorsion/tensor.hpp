#pragma once

// Dense symbolic tensors of arbitrary rank over an N-dimensional chart.
//
// Components are stored row-major; every slot carries its variance (Up for
// contravariant, Down for covariant). All algebraic operations simplify
// their outputs, so identically-zero components compare equal to zero()
// structurally.

#include "gtorsion/expr.hpp"

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace gtorsion {

enum class Slot : std::uint8_t { Up, Down };
using Valence = std::vector<Slot>;

class TensorError : public ExprError {
public:
    explicit TensorError(const std::string& what) : ExprError(what) {}
};

class Tensor {
public:
    Tensor(int dim, Valence valence);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(valence_.size()); }
    const Valence& valence() const { return valence_; }

    const Expr& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
    Expr& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
    const Expr& at(std::initializer_list<int> idx) const {
        return at(std::vector<int>(idx));
    }
    Expr& at(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }

    // rank-0 access
    const Expr& scalar() const;

    std::size_t size() const { return data_.size(); }
    const Expr& flat(std::size_t i) const { return data_[i]; }
    Expr& flat(std::size_t i) { return data_[i]; }

    void for_each(const std::function<void(const std::vector<int>&)>& fn) const;

private:
    std::size_t offset(const std::vector<int>& idx) const;

    int dim_;
    Valence valence_;
    std::vector<Expr> data_;
};

// componentwise
Tensor simplified(const Tensor& t);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& t, const Expr& c);
Tensor scale(const Tensor& t, const Rational& c);

// Outer product: slots of `a` then slots of `b`.
Tensor tensor_product(const Tensor& a, const Tensor& b);

// Contraction of one Up slot with one Down slot; remaining slots keep their
// original order.
Tensor contract(const Tensor& t, int slot_a, int slot_b);

// Componentwise coordinate derivative. The valence is unchanged: callers
// that need the extra covariant slot assemble it themselves by looping over
// coordinates.
Tensor partial(const Tensor& t, const std::string& coord);

// (anti)symmetrization over two like-variance slots, with the conventional
// 1/2 factor.
Tensor symmetrize(const Tensor& t, int slot_a, int slot_b);
Tensor antisymmetrize(const Tensor& t, int slot_a, int slot_b);

// Variance flips in place: slot keeps its position, summing against the
// supplied (inverse) metric, which must be rank 2 of the matching variance.
Tensor raise_index(const Tensor& t, int slot, const Tensor& inverse_metric);
Tensor lower_index(const Tensor& t, int slot, const Tensor& metric);

// max |component| over seeded probes; used by tests and the printed-value audit
bool probe_zero(const Tensor& t, int probes = 8, double tol = 1e-9,
                std::uint64_t seed = probe_seed());

}  // namespace gtorsion
