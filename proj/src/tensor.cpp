#include "gtorsion/tensor.hpp"

#include <cmath>

namespace gtorsion {

namespace {

std::size_t pow_size(int dim, int rank) {
    std::size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(dim);
    return s;
}

void check_slot(const Tensor& t, int slot) {
    if (slot < 0 || slot >= t.rank())
        throw TensorError("slot " + std::to_string(slot) + " out of range for rank " +
                          std::to_string(t.rank()));
}

void check_same_shape(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim() || a.valence() != b.valence())
        throw TensorError("tensor shapes differ");
}

}  // namespace

Tensor::Tensor(int dim, Valence valence) : dim_(dim), valence_(std::move(valence)) {
    if (dim <= 0) throw TensorError("tensor dimension must be positive");
    data_.assign(pow_size(dim_, static_cast<int>(valence_.size())), zero());
}

std::size_t Tensor::offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw TensorError("index rank " + std::to_string(idx.size()) + " does not match tensor rank " +
                          std::to_string(rank()));
    std::size_t off = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim_) throw TensorError("index " + std::to_string(i) + " out of range");
        off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
}

const Expr& Tensor::scalar() const {
    if (rank() != 0) throw TensorError("scalar() requires a rank-0 tensor");
    return data_[0];
}

void Tensor::for_each(const std::function<void(const std::vector<int>&)>& fn) const {
    std::vector<int> idx(rank(), 0);
    if (rank() == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        int pos = rank() - 1;
        while (pos >= 0 && ++idx[pos] == dim_) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

Tensor simplified(const Tensor& t) {
    Tensor out = t;
    for (std::size_t i = 0; i < out.size(); ++i) out.flat(i) = simplify(out.flat(i));
    return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b);
    Tensor out(a.dim(), a.valence());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.flat(i) = simplify(a.flat(i) + b.flat(i));
    return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b);
    Tensor out(a.dim(), a.valence());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.flat(i) = simplify(a.flat(i) - b.flat(i));
    return out;
}

Tensor scale(const Tensor& t, const Expr& c) {
    Tensor out(t.dim(), t.valence());
    for (std::size_t i = 0; i < out.size(); ++i) out.flat(i) = simplify(c * t.flat(i));
    return out;
}

Tensor scale(const Tensor& t, const Rational& c) { return scale(t, constant(c)); }

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim()) throw TensorError("tensor product requires matching dimensions");
    Valence v = a.valence();
    v.insert(v.end(), b.valence().begin(), b.valence().end());
    Tensor out(a.dim(), v);
    std::vector<int> ia(a.rank()), ib(b.rank());
    out.for_each([&](const std::vector<int>& idx) {
        for (int i = 0; i < a.rank(); ++i) ia[i] = idx[i];
        for (int i = 0; i < b.rank(); ++i) ib[i] = idx[a.rank() + i];
        out.at(idx) = simplify(a.at(ia) * b.at(ib));
    });
    return out;
}

Tensor contract(const Tensor& t, int slot_a, int slot_b) {
    check_slot(t, slot_a);
    check_slot(t, slot_b);
    if (slot_a == slot_b) throw TensorError("contraction needs two distinct slots");
    if (slot_a > slot_b) std::swap(slot_a, slot_b);
    if (t.valence()[slot_a] == t.valence()[slot_b])
        throw TensorError("contraction needs one contravariant and one covariant slot");

    Valence v;
    for (int i = 0; i < t.rank(); ++i)
        if (i != slot_a && i != slot_b) v.push_back(t.valence()[i]);
    Tensor out(t.dim(), v);

    std::vector<int> full(t.rank());
    out.for_each([&](const std::vector<int>& idx) {
        int src = 0;
        for (int i = 0; i < t.rank(); ++i)
            if (i != slot_a && i != slot_b) full[i] = idx[src++];
        std::vector<Expr> terms;
        terms.reserve(t.dim());
        for (int k = 0; k < t.dim(); ++k) {
            full[slot_a] = k;
            full[slot_b] = k;
            terms.push_back(t.at(full));
        }
        out.at(idx) = simplify(sum(std::move(terms)));
    });
    return out;
}

Tensor partial(const Tensor& t, const std::string& coord) {
    Tensor out(t.dim(), t.valence());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.flat(i) = simplify(differentiate(t.flat(i), coord));
    return out;
}

namespace {
Tensor sym_helper(const Tensor& t, int slot_a, int slot_b, bool anti) {
    check_slot(t, slot_a);
    check_slot(t, slot_b);
    if (slot_a == slot_b) throw TensorError("(anti)symmetrization needs two distinct slots");
    if (t.valence()[slot_a] != t.valence()[slot_b])
        throw TensorError("(anti)symmetrization needs two slots of the same variance");
    Tensor out(t.dim(), t.valence());
    std::vector<int> swapped(t.rank());
    out.for_each([&](const std::vector<int>& idx) {
        swapped = idx;
        std::swap(swapped[slot_a], swapped[slot_b]);
        Expr other = anti ? neg(t.at(swapped)) : t.at(swapped);
        out.at(idx) = simplify(constant(Rational(1, 2)) * (t.at(idx) + other));
    });
    return out;
}
}  // namespace

Tensor symmetrize(const Tensor& t, int slot_a, int slot_b) {
    return sym_helper(t, slot_a, slot_b, false);
}

Tensor antisymmetrize(const Tensor& t, int slot_a, int slot_b) {
    return sym_helper(t, slot_a, slot_b, true);
}

namespace {
Tensor flip_variance(const Tensor& t, int slot, const Tensor& metric, Slot from, Slot to) {
    check_slot(t, slot);
    if (t.valence()[slot] != from) throw TensorError("slot already has the requested variance");
    if (metric.rank() != 2 || metric.valence()[0] != to || metric.valence()[1] != to)
        throw TensorError("variance flip needs a rank-2 metric of the target variance");
    if (metric.dim() != t.dim()) throw TensorError("metric dimension mismatch");

    Valence v = t.valence();
    v[slot] = to;
    Tensor out(t.dim(), v);
    std::vector<int> src(t.rank());
    out.for_each([&](const std::vector<int>& idx) {
        src = idx;
        std::vector<Expr> terms;
        terms.reserve(t.dim());
        for (int k = 0; k < t.dim(); ++k) {
            src[slot] = k;
            terms.push_back(metric.at({idx[slot], k}) * t.at(src));
        }
        out.at(idx) = simplify(sum(std::move(terms)));
    });
    return out;
}
}  // namespace

Tensor raise_index(const Tensor& t, int slot, const Tensor& inverse_metric) {
    return flip_variance(t, slot, inverse_metric, Slot::Down, Slot::Up);
}

Tensor lower_index(const Tensor& t, int slot, const Tensor& metric) {
    return flip_variance(t, slot, metric, Slot::Up, Slot::Down);
}

bool probe_zero(const Tensor& t, int probes, double tol, std::uint64_t seed) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        EquivResult r = equivalent(t.flat(i), zero(), probes, tol, seed + i);
        if (r.verdict == Verdict::Different) return false;
    }
    return true;
}

}  // namespace gtorsion
