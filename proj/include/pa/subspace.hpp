#pragma once

#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace pa {

// Orthonormal basis grown one vector at a time (modified Gram-Schmidt, two passes).
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim, double tol_rank = Tolerances{}.rank)
        : dim_(ambient_dim), tol_(tol_rank) {}

    std::size_t ambient_dim() const { return dim_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    double tol_rank() const { return tol_; }

    Vec residual(const Vec& v) const {
        if (v.size() != dim_) throw std::invalid_argument("subspace: dimension mismatch");
        Vec r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis_) {
                const double c = dot(r, b);
                for (std::size_t i = 0; i < dim_; ++i) r[i] -= c * b[i];
            }
        return r;
    }

    bool contains(const Vec& v) const {
        return norm2(residual(v)) <= tol_ * std::max(1.0, norm2(v));
    }

    bool try_add(const Vec& v) {
        if (basis_.size() == dim_) {
            if (v.size() != dim_) throw std::invalid_argument("subspace: dimension mismatch");
            return false;
        }
        Vec r = residual(v);
        const double len = norm2(r);
        if (len <= tol_ * std::max(1.0, norm2(v))) return false;
        for (auto& x : r) x /= len;
        basis_.push_back(std::move(r));
        return true;
    }

private:
    std::size_t dim_;
    double tol_;
    std::vector<Vec> basis_;
};

inline bool subspace_try_add(Subspace& s, const Vec& v) { return s.try_add(v); }

}  // namespace pa
