/**
 * Brute-force polyhedral oracles for the test suite.
 *
 * Deliberately independent of the double description implementation: plain
 * Gaussian elimination plus exhaustive subset enumeration. Exponentially
 * slower than the library path, but exact, and simple enough to trust by
 * inspection. Expected values in the tests are frozen from these.
 */

#pragma once

#include <optional>
#include <vector>

#include "gptbox/polyhedra.hpp"

namespace oracle {

using gptbox::Halfspace;
using gptbox::Index;
using gptbox::Rational;
using gptbox::RMat;
using gptbox::RVec;

/// Row-reduce [a | b]; returns one solution when consistent.
inline std::optional<RVec> gauss_solve(RMat a, RVec b) {
    const Index m = a.rows(), n = a.cols();
    std::vector<Index> pivot_col(static_cast<std::size_t>(m), -1);
    Index row = 0;
    for (Index col = 0; col < n && row < m; ++col) {
        Index piv = -1;
        for (Index r = row; r < m; ++r)
            if (a(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.row(piv).swap(a.row(row));
        std::swap(b(piv), b(row));
        const Rational d = a(row, col);
        a.row(row) /= d;
        b(row) /= d;
        for (Index r = 0; r < m; ++r) {
            if (r == row || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            a.row(r) -= f * a.row(row);
            b(r) -= f * b(row);
        }
        pivot_col[static_cast<std::size_t>(row)] = col;
        ++row;
    }
    for (Index r = row; r < m; ++r)
        if (b(r) != 0) return std::nullopt;
    RVec x = RVec::Zero(n);
    for (Index r = 0; r < row; ++r) x(pivot_col[static_cast<std::size_t>(r)]) = b(r);
    return x;
}

/// Kernel basis by back-substitution of the free columns.
inline std::vector<RVec> gauss_kernel(RMat a) {
    const Index m = a.rows(), n = a.cols();
    std::vector<Index> pivot_of_col(static_cast<std::size_t>(n), -1);
    Index row = 0;
    for (Index col = 0; col < n && row < m; ++col) {
        Index piv = -1;
        for (Index r = row; r < m; ++r)
            if (a(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.row(piv).swap(a.row(row));
        const Rational d = a(row, col);
        a.row(row) /= d;
        for (Index r = 0; r < m; ++r) {
            if (r == row || a(r, col) == 0) continue;
            a.row(r) -= a(r, col) * a.row(row);
        }
        pivot_of_col[static_cast<std::size_t>(col)] = row;
        ++row;
    }
    std::vector<RVec> basis;
    for (Index col = 0; col < n; ++col) {
        if (pivot_of_col[static_cast<std::size_t>(col)] >= 0) continue;
        RVec v = RVec::Zero(n);
        v(col) = 1;
        for (Index c = 0; c < n; ++c) {
            const Index pr = pivot_of_col[static_cast<std::size_t>(c)];
            if (pr >= 0) v(c) = -a(pr, col);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/**
 * Extreme rays of {x : a x >= 0} by enumerating all (n-1)-row subsets: a
 * subset whose kernel is one-dimensional contributes its kernel generator
 * (with the feasible sign) as a candidate extreme ray.
 */
inline std::vector<RVec> cone_rays(const RMat& a) {
    const Index m = a.rows(), n = a.cols();
    std::vector<RVec> found;
    std::vector<Index> idx;
    auto feasible = [&](const RVec& v) {
        for (Index r = 0; r < m; ++r)
            if (a.row(r).dot(v) < 0) return false;
        return true;
    };
    auto recurse = [&](auto&& self, Index start) -> void {
        if (static_cast<Index>(idx.size()) == n - 1) {
            RMat sub(n - 1, n);
            for (Index k = 0; k < n - 1; ++k) sub.row(k) = a.row(idx[static_cast<std::size_t>(k)]);
            auto kernel = gauss_kernel(sub);
            if (kernel.size() == 1) {
                const RVec v = gptbox::canonical_scale(kernel.front());
                if (feasible(v))
                    found.push_back(v);
                else if (feasible(RVec(-v)))
                    found.push_back(RVec(-v));
            }
            return;
        }
        for (Index i = start; i < m; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    if (n == 1) {
        RVec v(1);
        v(0) = 1;
        if (feasible(v)) found.push_back(v);
        if (feasible(RVec(-v))) found.push_back(RVec(-v));
    } else {
        recurse(recurse, 0);
    }
    gptbox::sort_unique(found);
    return found;
}

/**
 * Vertices of {normal·x <= offset, equalities} by solving every dim-subset
 * of the combined constraint pool as a linear system and keeping the
 * feasible unique solutions. Bounded inputs only (an oracle, not a checker
 * of unboundedness).
 */
inline std::vector<RVec> vertices(const std::vector<Halfspace>& ineqs,
                                  const std::vector<std::pair<RVec, Rational>>& eqs, Index dim) {
    std::vector<std::pair<RVec, Rational>> pool;
    for (const auto& h : ineqs) pool.emplace_back(h.normal, h.offset);
    for (const auto& e : eqs) pool.push_back(e);
    const std::size_t m = pool.size();
    std::vector<RVec> found;
    std::vector<std::size_t> idx;
    auto feasible = [&](const RVec& x) {
        for (const auto& h : ineqs)
            if (h.normal.dot(x) > h.offset) return false;
        for (const auto& e : eqs)
            if (e.first.dot(x) != e.second) return false;
        return true;
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<Index>(idx.size()) == dim) {
            RMat a(dim, dim);
            RVec b(dim);
            for (Index k = 0; k < dim; ++k) {
                a.row(k) = pool[idx[static_cast<std::size_t>(k)]].first.transpose();
                b(k) = pool[idx[static_cast<std::size_t>(k)]].second;
            }
            if (!gauss_kernel(a).empty()) return;  // not a unique intersection point
            auto x = gauss_solve(a, b);
            if (x && feasible(*x)) found.push_back(*x);
            return;
        }
        for (std::size_t i = start; i + (static_cast<std::size_t>(dim) - idx.size()) <= m; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    recurse(recurse, 0);
    gptbox::sort_unique(found);
    return found;
}

/// Convex-hull membership by exhaustive Caratheodory subset search.
inline bool in_convex_hull(const RVec& point, const std::vector<RVec>& points) {
    const Index dim = point.size();
    std::vector<RVec> lifted;
    for (const RVec& p : points) {
        RVec z(dim + 1);
        z.head(dim) = p;
        z(dim) = 1;
        lifted.push_back(std::move(z));
    }
    RVec target(dim + 1);
    target.head(dim) = point;
    target(dim) = 1;

    const std::size_t n = lifted.size();
    std::vector<std::size_t> idx;
    auto recurse = [&](auto&& self, std::size_t start, std::size_t want) -> bool {
        if (idx.size() == want) {
            RMat m(dim + 1, static_cast<Index>(want));
            for (std::size_t k = 0; k < want; ++k) m.col(static_cast<Index>(k)) = lifted[idx[k]];
            auto sol = gauss_solve(m, target);
            if (!sol) return false;
            if (!(m * *sol == target)) return false;
            for (Index k = 0; k < sol->size(); ++k)
                if ((*sol)(k) < 0) return false;
            return true;
        }
        for (std::size_t i = start; i + (want - idx.size()) <= n; ++i) {
            idx.push_back(i);
            if (self(self, i + 1, want)) return true;
            idx.pop_back();
        }
        return false;
    };
    const std::size_t cap = std::min<std::size_t>(n, static_cast<std::size_t>(dim) + 1);
    for (std::size_t size = 1; size <= cap; ++size)
        if (recurse(recurse, 0, size)) return true;
    return false;
}

}  // namespace oracle
