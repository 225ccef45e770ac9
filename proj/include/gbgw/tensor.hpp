#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "laurent.hpp"

namespace gbgw {

// Multivariate truncated series: coefficients indexed by integer exponent tuples.
// Coefficients are exact for tuples inside the per-variable box [lo_i, hi_i] whose
// exponent sum is at least min_total; elsewhere nothing is known.
template <class C>
class basic_tensor {
public:
    using Index = std::vector<int>;

    basic_tensor() = default;
    explicit basic_tensor(std::size_t arity)
        : lo_(arity, -INF), hi_(arity, INF), names_(arity)
    {
        for (std::size_t i = 0; i < arity; ++i)
            names_[i] = "x" + std::to_string(i + 1);
    }

    std::size_t arity() const { return lo_.size(); }
    const std::map<Index, C>& coefficients() const { return c_; }
    const std::vector<std::string>& names() const { return names_; }
    void set_names(std::vector<std::string> n)
    {
        if (n.size() != arity())
            throw std::invalid_argument("set_names: arity mismatch");
        names_ = std::move(n);
    }

    std::int64_t lo(std::size_t i) const { return lo_.at(i); }
    std::int64_t hi(std::size_t i) const { return hi_.at(i); }
    std::int64_t min_total() const { return min_total_; }

    void set_window(std::size_t i, std::int64_t lo, std::int64_t hi)
    {
        lo_.at(i) = lo;
        hi_.at(i) = hi;
        prune();
    }
    void set_min_total(std::int64_t t)
    {
        min_total_ = t;
        prune();
    }

    bool known(const Index& idx) const
    {
        if (idx.size() != arity())
            throw std::invalid_argument("tensor index of wrong arity");
        std::int64_t total = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < lo_[i] || idx[i] > hi_[i])
                return false;
            total += idx[i];
        }
        return total >= min_total_;
    }

    const C& coeff(const Index& idx) const
    {
        static const C zero{};
        if (!known(idx))
            throw window_error("tensor coefficient outside window");
        auto it = c_.find(idx);
        return it == c_.end() ? zero : it->second;
    }

    void set(const Index& idx, C v)
    {
        if (!known(idx))
            throw window_error("tensor set outside window");
        if (v.is_zero())
            c_.erase(idx);
        else
            c_[idx] = std::move(v);
    }
    void add_to(const Index& idx, const C& v)
    {
        if (!known(idx))
            throw window_error("tensor add outside window");
        if (v.is_zero())
            return;
        auto [it, inserted] = c_.try_emplace(idx, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    basic_tensor operator-() const
    {
        basic_tensor r(*this);
        for (auto& [k, v] : r.c_)
            v = -v;
        return r;
    }
    friend basic_tensor operator+(const basic_tensor& a, const basic_tensor& b) { return combine(a, b, false); }
    friend basic_tensor operator-(const basic_tensor& a, const basic_tensor& b) { return combine(a, b, true); }
    friend basic_tensor operator*(basic_tensor a, const C& k)
    {
        for (auto it = a.c_.begin(); it != a.c_.end();) {
            it->second *= k;
            it = it->second.is_zero() ? a.c_.erase(it) : std::next(it);
        }
        return a;
    }

    // Product of two fully known (polynomial) tensors.
    friend basic_tensor operator*(const basic_tensor& a, const basic_tensor& b)
    {
        if (a.arity() != b.arity())
            throw std::invalid_argument("tensor product: arity mismatch");
        if (!a.fully_known() || !b.fully_known())
            throw window_error("tensor product is only defined for fully known tensors");
        basic_tensor r(a.arity());
        r.names_ = a.names_;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_) {
                Index k(ka.size());
                for (std::size_t i = 0; i < k.size(); ++i)
                    k[i] = ka[i] + kb[i];
                r.add_to(k, va * vb);
            }
        return r;
    }

    bool fully_known() const
    {
        if (min_total_ > -INF)
            return false;
        for (std::size_t i = 0; i < arity(); ++i)
            if (lo_[i] > -INF || hi_[i] < INF)
                return false;
        return true;
    }

    // Variable i of the result is variable perm[i] of this tensor.
    basic_tensor permuted(const std::vector<std::size_t>& perm) const
    {
        if (perm.size() != arity())
            throw std::invalid_argument("permuted: wrong permutation length");
        std::vector<bool> seen(arity(), false);
        for (auto p : perm) {
            if (p >= arity() || seen[p])
                throw std::invalid_argument("permuted: not a permutation");
            seen[p] = true;
        }
        basic_tensor r(arity());
        r.min_total_ = min_total_;
        for (std::size_t i = 0; i < arity(); ++i) {
            r.lo_[i] = lo_[perm[i]];
            r.hi_[i] = hi_[perm[i]];
            r.names_[i] = names_[perm[i]];
        }
        for (const auto& [k, v] : c_) {
            Index q(k.size());
            for (std::size_t i = 0; i < k.size(); ++i)
                q[i] = k[perm[i]];
            r.c_.emplace(std::move(q), v);
        }
        return r;
    }

    // Equality on the common known region.
    bool agrees_with(const basic_tensor& o) const
    {
        if (o.arity() != arity())
            return false;
        for (const auto& [k, v] : c_)
            if (o.known(k) && !(o.coeff(k) - v).is_zero())
                return false;
        for (const auto& [k, v] : o.c_)
            if (known(k) && !c_.count(k))
                return false;
        return true;
    }

    // Invariance under every permutation of the variables (checked on adjacent swaps).
    bool is_symmetric() const
    {
        for (std::size_t i = 0; i + 1 < arity(); ++i) {
            std::vector<std::size_t> p(arity());
            std::iota(p.begin(), p.end(), 0);
            std::swap(p[i], p[i + 1]);
            if (!agrees_with(permuted(p)))
                return false;
        }
        return true;
    }
    // For arity 2: T(y, x) = -T(x, y).
    bool is_antisymmetric() const
    {
        if (arity() != 2)
            throw std::invalid_argument("is_antisymmetric: arity must be 2");
        return agrees_with(-permuted({1, 0}));
    }

private:
    std::map<Index, C> c_;
    std::vector<std::int64_t> lo_, hi_;
    std::int64_t min_total_ = -INF;
    std::vector<std::string> names_;

    void prune()
    {
        for (auto it = c_.begin(); it != c_.end();)
            it = known(it->first) ? std::next(it) : c_.erase(it);
    }

    static basic_tensor combine(const basic_tensor& a, const basic_tensor& b, bool subtract)
    {
        if (a.arity() != b.arity())
            throw std::invalid_argument("tensor sum: arity mismatch");
        basic_tensor r(a.arity());
        r.names_ = a.names_;
        r.min_total_ = std::max(a.min_total_, b.min_total_);
        for (std::size_t i = 0; i < a.arity(); ++i) {
            r.lo_[i] = std::max(a.lo_[i], b.lo_[i]);
            r.hi_[i] = std::min(a.hi_[i], b.hi_[i]);
        }
        for (const auto& [k, v] : a.c_)
            if (r.known(k))
                r.add_to(k, v);
        for (const auto& [k, v] : b.c_)
            if (r.known(k))
                r.add_to(k, subtract ? C(-v) : v);
        return r;
    }
};

using SparseTensor = basic_tensor<ParamPoly>;
using BiSeries = basic_tensor<ParamPoly>;

// Exact division of a homogeneous slice by a homogeneous divisor, both in two variables.
// num maps the first variable's exponent i to the coefficient of v1^i v2^(d - i); div likewise
// with total degree dd. Returns the quotient (total degree d - dd); throws on a nonzero remainder.
template <class C>
std::map<int, C> divide_homogeneous_slice(std::map<int, C> num, const std::map<int, Rational>& div)
{
    if (div.empty())
        throw std::domain_error("divide_homogeneous_slice: zero divisor");
    std::map<int, C> quot;
    const int dtop = div.rbegin()->first, dbot = div.begin()->first;
    const Rational lead_inv = Rational(1) / div.rbegin()->second;
    while (!num.empty()) {
        int ntop = num.rbegin()->first;
        int nbot = num.begin()->first;
        if (ntop - nbot < dtop - dbot)
            throw std::domain_error("divide_homogeneous_slice: nonzero remainder");
        int qe = ntop - dtop;
        C q = num.rbegin()->second * lead_inv;
        for (const auto& [e, c] : div) {
            auto [it, inserted] = num.try_emplace(qe + e, C{});
            it->second -= q * c;
            if (it->second.is_zero())
                num.erase(it);
        }
        quot[qe] += q;
    }
    return quot;
}

} // namespace gbgw
