/**
 * Exact polyhedral computation: extreme rays of halfspace cones (double
 * description method), dual cones, vertex enumeration, and membership
 * certificates.
 *
 * All computations are exact over Rational. Outputs are deterministic:
 * rays are scaled to coprime integers, vertices are kept in their
 * normalized form, and both are sorted lexicographically.
 */

#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gptbox/linalg.hpp"

namespace gptbox {

/// Feasible region has a recession direction, so it has no complete vertex set.
class UnboundedError : public std::runtime_error {
  public:
    explicit UnboundedError(RVec direction)
        : std::runtime_error("unbounded: feasible region has a recession direction"),
          direction_(std::move(direction)) {}
    const RVec& direction() const { return direction_; }

  private:
    RVec direction_;
};

/// The requested dual cone contains a line; the offending lineality basis is attached.
class NotPointedError : public std::runtime_error {
  public:
    explicit NotPointedError(std::vector<RVec> lineality)
        : std::runtime_error("dual not pointed: generators do not span the space"),
          lineality_(std::move(lineality)) {}
    const std::vector<RVec>& lineality() const { return lineality_; }

  private:
    std::vector<RVec> lineality_;
};

/// A·x <= offset halfspace of a polytope description.
struct Halfspace {
    RVec normal;
    Rational offset;
};

/**
 * A convex cone given by generating rays, with the facet description
 * (supporting functionals f, meaning f·x >= 0 on the cone) attached once
 * computed.
 */
struct Cone {
    Index dim = 0;
    std::vector<RVec> rays;
    std::optional<std::vector<RVec>> facets;
};

/// Polytope with one or both of its dual descriptions.
struct Polytope {
    Index dim = 0;
    std::optional<std::vector<RVec>> vertices;
    std::optional<std::vector<Halfspace>> inequalities;
};

namespace detail {

using ActiveSet = boost::dynamic_bitset<>;

/**
 * Double description step: extreme rays of {x : A x >= 0} for a pointed cone.
 *
 * Requires kernel(A) = 0; callers translate a nontrivial kernel into their
 * own error (line in a polytope, non-pointed dual). Constraint rows are
 * canonically scaled, deduplicated and inserted in lexicographic order on
 * top of a simplicial start basis, so the output is a deterministic
 * function of the constraint set.
 */
inline std::vector<RVec> dd_extreme_rays(const RMat& a_input) {
    const Index n = a_input.cols();

    // Canonicalize and deduplicate constraint rows.
    std::vector<RVec> rows;
    rows.reserve(static_cast<std::size_t>(a_input.rows()));
    for (Index i = 0; i < a_input.rows(); ++i) {
        RVec r = canonical_scale(RVec(a_input.row(i).transpose()));
        if (r != RVec::Zero(n)) rows.push_back(std::move(r));
    }
    sort_unique(rows);
    RMat a = stack_rows(rows, n);
    const Index m = a.rows();

    // Start from a simplicial cone picked from n independent constraints:
    // {x : B x >= 0} has extreme rays the columns of B^{-1}.
    const std::vector<Index> basis = independent_rows(a);
    if (static_cast<Index>(basis.size()) < n)
        throw std::logic_error("dd_extreme_rays requires a pointed cone");
    RMat b(n, n);
    for (Index i = 0; i < n; ++i) b.row(i) = a.row(basis[static_cast<std::size_t>(i)]);
    RMat rays_mat = Eigen::FullPivLU<RMat>(b).inverse();

    // Processing order: basis rows first, the rest as sorted.
    std::vector<Index> order = basis;
    {
        std::vector<bool> used(static_cast<std::size_t>(m), false);
        for (Index i : basis) used[static_cast<std::size_t>(i)] = true;
        for (Index i = 0; i < m; ++i)
            if (!used[static_cast<std::size_t>(i)]) order.push_back(i);
    }

    struct Ray {
        RVec v;
        ActiveSet active;  // bit k set: constraint order[k] is tight
    };
    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        Ray r{canonical_scale(RVec(rays_mat.col(j))), ActiveSet(static_cast<std::size_t>(m))};
        for (Index k = 0; k < n; ++k)
            if (k != j) r.active.set(static_cast<std::size_t>(k));
        rays.push_back(std::move(r));
    }

    for (std::size_t step = static_cast<std::size_t>(n); step < order.size(); ++step) {
        const RVec row = a.row(order[step]).transpose();
        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> pos, zero, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            value[i] = row.dot(rays[i].v);
            if (value[i] > 0)
                pos.push_back(i);
            else if (value[i] == 0)
                zero.push_back(i);
            else
                neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (value[i] == 0) rays[i].active.set(step);
            continue;
        }

        // Adjacent (positive, negative) pairs produce the new boundary rays.
        // Combinatorial adjacency: no third extreme ray is tight on the
        // common tight set of the pair.
        std::vector<Ray> born;
        for (std::size_t p : pos) {
            for (std::size_t ng : neg) {
                ActiveSet common = rays[p].active & rays[ng].active;
                bool adjacent = true;
                for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
                    if (t == p || t == ng) continue;
                    if (common.is_subset_of(rays[t].active)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray fresh;
                fresh.v = canonical_scale(RVec(value[p] * rays[ng].v - value[ng] * rays[p].v));
                fresh.active = std::move(common);
                fresh.active.set(step);
                born.push_back(std::move(fresh));
            }
        }
        std::vector<Ray> next;
        next.reserve(pos.size() + zero.size() + born.size());
        for (std::size_t i : pos) next.push_back(std::move(rays[i]));
        for (std::size_t i : zero) {
            rays[i].active.set(step);
            next.push_back(std::move(rays[i]));
        }
        for (Ray& r : born) next.push_back(std::move(r));
        rays = std::move(next);
        if (rays.empty()) break;  // cone collapsed to {0}
    }

    std::vector<RVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    sort_unique(out);
    return out;
}

/// Kernel basis as a list of column vectors.
inline std::vector<RVec> kernel_columns(const RMat& m) {
    RMat k = kernel_basis(m);
    std::vector<RVec> cols;
    cols.reserve(static_cast<std::size_t>(k.cols()));
    for (Index j = 0; j < k.cols(); ++j) cols.push_back(canonical_scale(RVec(k.col(j))));
    return cols;
}

}  // namespace detail

/**
 * Extreme rays of the dual cone {f : f·r >= 0 for every generator r}.
 *
 * Throws NotPointedError (with the lineality basis, i.e. the orthogonal
 * complement of the generators' span) when the generators do not span the
 * ambient space, since the dual then contains lines and has no ray
 * description.
 */
inline Cone dual_cone(const Cone& cone) {
    RMat a = stack_rows(cone.rays, cone.dim);
    std::vector<RVec> lineality = detail::kernel_columns(a);
    if (!lineality.empty()) throw NotPointedError(std::move(lineality));
    Cone dual;
    dual.dim = cone.dim;
    dual.rays = detail::dd_extreme_rays(a);
    // Facets of the dual are exactly the primal generators (extremal ones).
    return dual;
}

/// Convenience: cone from generating rays (canonicalized, deduplicated).
inline Cone make_cone(std::vector<RVec> rays, Index dim) {
    Cone c;
    c.dim = dim;
    for (auto& r : rays) r = canonical_scale(r);
    sort_unique(rays);
    c.rays = std::move(rays);
    return c;
}

/**
 * Vertices of {x : normal·x <= offset for all inequalities, equalities hold}.
 *
 * Exact double description on the homogenization. Throws UnboundedError when
 * the feasible region has a recession direction (or contains a line) and
 * returns an empty list when it is infeasible. Output is sorted
 * lexicographically.
 */
inline std::vector<RVec> enumerate_vertices(const std::vector<Halfspace>& inequalities,
                                            const std::vector<std::pair<RVec, Rational>>& equalities,
                                            Index dim) {
    // Homogenize: z = (x, t). Inequalities become (-normal, offset)·z >= 0,
    // plus t >= 0; equalities constrain z to a linear subspace.
    RMat eq(static_cast<Index>(equalities.size()), dim + 1);
    for (std::size_t i = 0; i < equalities.size(); ++i) {
        eq.row(static_cast<Index>(i)).head(dim) = equalities[i].first.transpose();
        eq(static_cast<Index>(i), dim) = -equalities[i].second;
    }
    RMat subspace = kernel_basis(eq);  // z = subspace * w
    if (subspace.cols() == 0) return {};

    RMat lifted(static_cast<Index>(inequalities.size()) + 1, dim + 1);
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        lifted.row(static_cast<Index>(i)).head(dim) = -inequalities[i].normal.transpose();
        lifted(static_cast<Index>(i), dim) = inequalities[i].offset;
    }
    lifted.row(lifted.rows() - 1).setZero();
    lifted(lifted.rows() - 1, dim) = 1;  // t >= 0

    RMat reduced = lifted * subspace;
    {
        // A line in the reduced feasible cone is a line in the polyhedron.
        std::vector<RVec> lines = detail::kernel_columns(reduced);
        if (!lines.empty()) {
            RVec z = subspace * lines.front();
            throw UnboundedError(RVec(z.head(dim)));
        }
    }

    std::vector<RVec> wrays = detail::dd_extreme_rays(reduced);
    std::vector<RVec> vertices;
    for (const RVec& w : wrays) {
        RVec z = subspace * w;
        const Rational t = z(dim);
        if (t == 0) throw UnboundedError(RVec(z.head(dim)));
        RVec x = z.head(dim) / t;
        vertices.push_back(std::move(x));
    }
    sort_unique(vertices);
    return vertices;
}

/**
 * Inequality description of conv(vertices) as normal·x <= offset, via the
 * lifted dual cone. A polytope that is not full-dimensional gets its affine
 * hull pinned by opposite halfspace pairs, so enumerate_vertices on the
 * returned list reproduces the vertex set in any case.
 */
inline std::vector<Halfspace> polytope_facets(const std::vector<RVec>& vertices, Index dim) {
    if (vertices.empty()) throw std::invalid_argument("polytope_facets: no vertices");
    std::vector<Halfspace> out;

    // Affine hull: translate to the first vertex and take the span.
    const RVec origin = vertices.front();
    RMat diffs(static_cast<Index>(vertices.size()) - 1, dim);
    for (std::size_t i = 1; i < vertices.size(); ++i)
        diffs.row(static_cast<Index>(i - 1)) = (vertices[i] - origin).transpose();
    RMat hull_basis = kernel_basis(kernel_basis(diffs).transpose());  // columns span the hull
    RMat complement = kernel_basis(RMat(hull_basis.transpose()));
    for (Index j = 0; j < complement.cols(); ++j) {
        RVec n = canonical_scale(RVec(complement.col(j)));
        const Rational c = n.dot(origin);
        out.push_back(Halfspace{n, c});
        out.push_back(Halfspace{RVec(-n), Rational(-c)});
    }

    // Facets within the hull, computed in reduced coordinates x = origin + B w.
    std::vector<RVec> lifted;
    lifted.reserve(vertices.size());
    const Index hull_dim = hull_basis.cols();
    for (const RVec& v : vertices) {
        auto w = solve_linear(hull_basis, RVec(v - origin));
        RVec z(hull_dim + 1);
        z.head(hull_dim) = *w;
        z(hull_dim) = 1;
        lifted.push_back(std::move(z));
    }
    Cone dual = dual_cone(make_cone(std::move(lifted), hull_dim + 1));
    for (const RVec& f : dual.rays) {
        // f·(w,1) >= 0  <=>  (-f_head)·w <= f_tail; lift the normal back with
        // any n solving B^T n = -f_head, then n·x <= f_tail + n·origin.
        auto n = solve_linear(RMat(hull_basis.transpose()), RVec(-f.head(hull_dim)));
        out.push_back(Halfspace{*n, f(hull_dim) + n->dot(origin)});
    }
    return out;
}

/// Membership decision for a point against a cone, with an exact certificate.
struct MembershipResult {
    bool inside = false;
    /// Facets tight at the point (indices into the facet list) when inside.
    std::vector<std::size_t> saturated;
    /// A functional with f·point < 0 and f·ray >= 0 for all generators, when outside.
    std::optional<RVec> separator;
};

namespace detail {

/// Membership in the possibly lower-dimensional cone spanned by `rays`.
inline MembershipResult cone_membership_impl(const RVec& point, const std::vector<RVec>& rays,
                                             Index dim,
                                             const std::vector<RVec>* cached_facets) {
    MembershipResult res;
    RMat ray_mat = stack_rows(rays, dim);

    if (cached_facets == nullptr) {
        // If the generators do not span the space, first separate along the
        // orthogonal complement if the point sticks out of the span.
        RMat complement = kernel_basis(ray_mat);
        for (Index j = 0; j < complement.cols(); ++j) {
            RVec f = RVec(complement.col(j));
            const Rational v = f.dot(point);
            if (v == 0) continue;
            res.inside = false;
            res.separator = canonical_scale(v < 0 ? f : RVec(-f));
            return res;
        }
        if (complement.cols() > 0) {
            // Point lies in the span; reduce coordinates to the span and recurse.
            RMat basis = kernel_basis(RMat(complement.transpose()));  // columns span the rays' space
            RMat basis_t = basis.transpose();
            std::vector<RVec> reduced_rays;
            reduced_rays.reserve(rays.size());
            for (const RVec& r : rays) {
                auto c = solve_linear(basis, r);
                reduced_rays.push_back(std::move(*c));
            }
            auto pc = solve_linear(basis, point);
            MembershipResult inner =
                cone_membership_impl(*pc, reduced_rays, basis.cols(), nullptr);
            if (!inner.inside && inner.separator) {
                // Lift the separating functional back: f such that f·(basis w) = f_red·w.
                auto lifted = solve_linear(basis_t, *inner.separator);
                inner.separator = canonical_scale(*lifted);
            }
            return inner;
        }
    }

    std::vector<RVec> facets;
    if (cached_facets != nullptr)
        facets = *cached_facets;
    else
        facets = dd_extreme_rays(ray_mat);

    for (std::size_t i = 0; i < facets.size(); ++i) {
        const Rational v = facets[i].dot(point);
        if (v < 0) {
            res.inside = false;
            res.separator = facets[i];
            return res;
        }
        if (v == 0) res.saturated.push_back(i);
    }
    res.inside = true;
    return res;
}

}  // namespace detail

/**
 * Decide point membership in the cone. Computes and caches the facet
 * description on first use when the generators span the space; otherwise
 * works in the span, so degenerate cones are fine.
 */
inline MembershipResult cone_membership(const RVec& point, Cone& cone) {
    if (point.size() != cone.dim)
        throw std::invalid_argument("cone_membership: dimension mismatch");
    if (!cone.facets) {
        RMat ray_mat = stack_rows(cone.rays, cone.dim);
        if (rank(ray_mat) == cone.dim)
            cone.facets = detail::dd_extreme_rays(ray_mat);
    }
    return detail::cone_membership_impl(point, cone.rays, cone.dim,
                                        cone.facets ? &*cone.facets : nullptr);
}

/// Read-only membership against an ad-hoc generator list.
inline MembershipResult cone_membership(const RVec& point, const std::vector<RVec>& rays,
                                        Index dim) {
    return detail::cone_membership_impl(point, rays, dim, nullptr);
}

/**
 * Extreme points of a finite point set (vertices of its convex hull), in
 * first-occurrence input order. Exact: a point is dropped iff it is a convex
 * combination of the others.
 */
inline std::vector<RVec> extreme_points(std::vector<RVec> points, Index dim) {
    std::vector<RVec> deduped;
    for (const RVec& p : points)
        if (std::find(deduped.begin(), deduped.end(), p) == deduped.end()) deduped.push_back(p);
    points = std::move(deduped);
    std::vector<RVec> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<RVec> others;
        others.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            RVec z(dim + 1);
            z.head(dim) = points[j];
            z(dim) = 1;
            others.push_back(std::move(z));
        }
        RVec zi(dim + 1);
        zi.head(dim) = points[i];
        zi(dim) = 1;
        if (others.empty() || !cone_membership(zi, others, dim + 1).inside)
            kept.push_back(points[i]);
    }
    return kept;
}

/// Extremal generators of cone(generators): drops members of the cone of the rest.
inline std::vector<RVec> extreme_rays_of_generators(std::vector<RVec> generators, Index dim) {
    for (auto& g : generators) g = canonical_scale(g);
    sort_unique(generators);
    std::vector<RVec> kept;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        std::vector<RVec> others;
        others.reserve(generators.size() - 1);
        for (std::size_t j = 0; j < generators.size(); ++j)
            if (j != i) others.push_back(generators[j]);
        if (others.empty() || !cone_membership(generators[i], others, dim).inside)
            kept.push_back(generators[i]);
    }
    return kept;
}

}  // namespace gptbox
