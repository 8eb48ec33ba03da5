/**
 * Weak self-duality certification.
 *
 * A cone is weakly self-dual when an invertible linear map sends it onto its
 * dual cone. The search below is exact and bounded: it first rejects on a
 * canonical ray-count mismatch, then enumerates ray bijections consistent
 * with the face-lattice adjacency of both cones (color-refinement pruned
 * backtracking), and for each candidate bijection solves the linear system
 * for the map and its per-ray positive scalings. A returned certificate is
 * verified exactly; absence of a certificate within the search bounds is
 * reported as such, not as a disproof (unless the ray counts already differ).
 */

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "gptbox/polyhedra.hpp"

namespace gptbox {

struct SelfDualityCertificate {
    RMat map;                     ///< T with T(cone) = dual cone
    std::vector<std::size_t> pairing;  ///< ray i maps to dual ray pairing[i]
    std::vector<Rational> scales;      ///< T * ray_i = scales[i] * dual_ray_{pairing[i]}
};

struct SelfDualityReport {
    std::vector<RVec> rays;       ///< canonical extremal rays of the cone
    std::vector<RVec> dual_rays;  ///< canonical extremal rays of the dual
    bool ray_counts_match = false;
    bool search_exhausted = false;  ///< bounds hit before covering all bijections
    std::optional<SelfDualityCertificate> certificate;
};

struct SelfDualitySearchLimits {
    std::size_t max_candidates = 20000;   ///< complete bijections to test
    std::size_t max_nodes = 2000000;      ///< backtracking nodes
};

namespace detail {

/// Fourier-Motzkin feasibility for A x <= b; returns a feasible point if any.
inline std::optional<std::vector<Rational>> fm_feasible_point(
    std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::size_t nvars) {
    if (nvars == 0) {
        for (const Rational& b : rhs)
            if (b < 0) return std::nullopt;
        return std::vector<Rational>{};
    }
    // Eliminate the last variable.
    std::vector<std::vector<Rational>> next_rows;
    std::vector<Rational> next_rhs;
    std::vector<std::size_t> lower, upper, none;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& c = rows[i][nvars - 1];
        if (c > 0)
            upper.push_back(i);
        else if (c < 0)
            lower.push_back(i);
        else
            none.push_back(i);
    }
    auto reduced_row = [&](std::size_t i) {
        std::vector<Rational> r(rows[i].begin(), rows[i].begin() + static_cast<long>(nvars - 1));
        return r;
    };
    for (std::size_t i : none) {
        next_rows.push_back(reduced_row(i));
        next_rhs.push_back(rhs[i]);
    }
    for (std::size_t i : lower) {
        for (std::size_t j : upper) {
            const Rational ci = -rows[i][nvars - 1];  // > 0
            const Rational cj = rows[j][nvars - 1];   // > 0
            std::vector<Rational> combo(nvars - 1);
            for (std::size_t k = 0; k + 1 < nvars; ++k)
                combo[k] = rows[i][k] * cj + rows[j][k] * ci;
            next_rows.push_back(std::move(combo));
            next_rhs.push_back(rhs[i] * cj + rhs[j] * ci);
        }
    }
    auto inner = fm_feasible_point(std::move(next_rows), std::move(next_rhs), nvars - 1);
    if (!inner) return std::nullopt;
    std::vector<Rational> point = *inner;
    // Back-substitute a feasible value for the eliminated variable.
    std::optional<Rational> lo, hi;
    for (std::size_t i : lower) {
        Rational acc = rhs[i];
        for (std::size_t k = 0; k + 1 < nvars; ++k) acc -= rows[i][k] * point[k];
        Rational bound = acc / rows[i][nvars - 1];  // x >= bound (coefficient negative)
        if (!lo || bound > *lo) lo = bound;
    }
    for (std::size_t i : upper) {
        Rational acc = rhs[i];
        for (std::size_t k = 0; k + 1 < nvars; ++k) acc -= rows[i][k] * point[k];
        Rational bound = acc / rows[i][nvars - 1];  // x <= bound
        if (!hi || bound < *hi) hi = bound;
    }
    Rational value;
    if (lo && hi)
        value = (*lo + *hi) / 2;
    else if (lo)
        value = *lo;
    else if (hi)
        value = *hi;
    else
        value = 0;
    point.push_back(value);
    return point;
}

/// Strictly positive vector in the column span of `basis`, if one exists.
inline std::optional<RVec> positive_in_span(const RMat& basis) {
    if (basis.cols() == 0) return std::nullopt;
    // Feasibility of basis * c >= 1 componentwise (scaling makes >=1 wlog).
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (Index i = 0; i < basis.rows(); ++i) {
        std::vector<Rational> r(static_cast<std::size_t>(basis.cols()));
        for (Index j = 0; j < basis.cols(); ++j) r[static_cast<std::size_t>(j)] = -basis(i, j);
        rows.push_back(std::move(r));
        rhs.push_back(Rational(-1));
    }
    auto c = fm_feasible_point(std::move(rows), std::move(rhs),
                               static_cast<std::size_t>(basis.cols()));
    if (!c) return std::nullopt;
    RVec cv(basis.cols());
    for (Index j = 0; j < basis.cols(); ++j) cv(j) = (*c)[static_cast<std::size_t>(j)];
    return RVec(basis * cv);
}

/// Ray adjacency from the ray/facet incidence: r,s adjacent iff no third ray
/// is tight on every facet tight for both.
inline std::vector<std::vector<bool>> adjacency_from_incidence(
    const std::vector<boost::dynamic_bitset<>>& tight) {
    const std::size_t n = tight.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            boost::dynamic_bitset<> common = tight[i] & tight[j];
            bool ok = true;
            for (std::size_t t = 0; t < n && ok; ++t) {
                if (t == i || t == j) continue;
                if (common.is_subset_of(tight[t])) ok = false;
            }
            adj[i][j] = adj[j][i] = ok;
        }
    }
    return adj;
}

/// Iterated color refinement over two graphs in a shared color pool.
inline std::pair<std::vector<int>, std::vector<int>> shared_colors(
    const std::vector<std::vector<bool>>& adj_a, const std::vector<int>& seed_a,
    const std::vector<std::vector<bool>>& adj_b, const std::vector<int>& seed_b) {
    std::vector<int> ca = seed_a, cb = seed_b;
    const std::size_t rounds = ca.size() + cb.size();
    for (std::size_t round = 0; round < rounds; ++round) {
        std::map<std::vector<int>, int> palette;
        auto refine = [&](const std::vector<std::vector<bool>>& adj, std::vector<int>& colors) {
            std::vector<std::vector<int>> sigs(colors.size());
            for (std::size_t i = 0; i < colors.size(); ++i) {
                std::vector<int> neigh;
                for (std::size_t j = 0; j < colors.size(); ++j)
                    if (adj[i][j]) neigh.push_back(colors[j]);
                std::sort(neigh.begin(), neigh.end());
                sigs[i].push_back(colors[i]);
                sigs[i].insert(sigs[i].end(), neigh.begin(), neigh.end());
            }
            return sigs;
        };
        auto sa = refine(adj_a, ca);
        auto sb = refine(adj_b, cb);
        for (const auto& s : sa) palette.emplace(s, 0);
        for (const auto& s : sb) palette.emplace(s, 0);
        int next = 0;
        for (auto& kv : palette) kv.second = next++;
        std::vector<int> na(ca.size()), nb(cb.size());
        for (std::size_t i = 0; i < ca.size(); ++i) na[i] = palette[sa[i]];
        for (std::size_t i = 0; i < cb.size(); ++i) nb[i] = palette[sb[i]];
        if (na == ca && nb == cb) break;
        ca = std::move(na);
        cb = std::move(nb);
    }
    return {ca, cb};
}

}  // namespace detail

/**
 * Search for a weak self-duality certificate of a pointed, spanning cone.
 * Returns the canonical ray sets of the cone and its dual alongside the
 * certificate when one is found.
 */
inline SelfDualityReport weak_self_duality_report(
    const Cone& cone, const SelfDualitySearchLimits& limits = {}) {
    SelfDualityReport report;
    Cone primal = make_cone(cone.rays, cone.dim);
    Cone dual = dual_cone(primal);
    report.rays = primal.rays;
    report.dual_rays = dual.rays;
    const std::size_t n_rays = report.rays.size();
    report.ray_counts_match = n_rays == report.dual_rays.size();
    if (!report.ray_counts_match || n_rays == 0) return report;

    const Index dim = cone.dim;
    // Shared incidence: tight_p[i] over dual rays (the cone's facets),
    // tight_d[j] over primal rays (the dual's facets).
    std::vector<boost::dynamic_bitset<>> tight_p(n_rays, boost::dynamic_bitset<>(n_rays));
    std::vector<boost::dynamic_bitset<>> tight_d(n_rays, boost::dynamic_bitset<>(n_rays));
    for (std::size_t i = 0; i < n_rays; ++i)
        for (std::size_t j = 0; j < n_rays; ++j)
            if (report.dual_rays[j].dot(report.rays[i]) == 0) {
                tight_p[i].set(j);
                tight_d[j].set(i);
            }
    auto adj_p = detail::adjacency_from_incidence(tight_p);
    auto adj_d = detail::adjacency_from_incidence(tight_d);

    std::vector<int> seed_p(n_rays), seed_d(n_rays);
    for (std::size_t i = 0; i < n_rays; ++i) seed_p[i] = static_cast<int>(tight_p[i].count());
    for (std::size_t j = 0; j < n_rays; ++j) seed_d[j] = static_cast<int>(tight_d[j].count());
    auto [color_p, color_d] = detail::shared_colors(adj_p, seed_p, adj_d, seed_d);
    {
        std::vector<int> mp = color_p, md = color_d;
        std::sort(mp.begin(), mp.end());
        std::sort(md.begin(), md.end());
        if (mp != md) return report;  // color multisets differ: no isomorphism
    }

    // Most-constrained-first ordering of primal rays.
    std::vector<std::size_t> order(n_rays);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> class_size(n_rays, 0);
    for (std::size_t i = 0; i < n_rays; ++i)
        for (std::size_t j = 0; j < n_rays; ++j)
            if (color_p[j] == color_p[i]) ++class_size[i];
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return class_size[a] < class_size[b];
    });

    // Linear-independence structure of the primal rays for the scaling system.
    RMat ray_mat_cols(dim, static_cast<Index>(n_rays));
    for (std::size_t i = 0; i < n_rays; ++i) ray_mat_cols.col(static_cast<Index>(i)) = report.rays[i];
    std::vector<Index> basis = independent_rows(RMat(ray_mat_cols.transpose()));
    RMat basis_cols(dim, static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k)
        basis_cols.col(static_cast<Index>(k)) = report.rays[static_cast<std::size_t>(basis[k])];
    Eigen::FullPivLU<RMat> basis_lu(basis_cols);

    std::size_t candidates_tested = 0;
    std::size_t nodes = 0;
    std::vector<long> assigned(n_rays, -1);
    std::vector<bool> used(n_rays, false);
    std::optional<SelfDualityCertificate> found;

    auto try_candidate = [&](const std::vector<long>& pi) -> bool {
        ++candidates_tested;
        // Unknown scalings lambda: T r_i = lambda_i d_{pi(i)}. With T fixed by
        // the basis rays, each dependent ray adds dim linear equations.
        const std::size_t nb = basis.size();
        std::vector<std::size_t> dep;
        for (std::size_t i = 0; i < n_rays; ++i)
            if (std::find(basis.begin(), basis.end(), static_cast<Index>(i)) == basis.end())
                dep.push_back(i);
        RMat sys(static_cast<Index>(dep.size()) * dim, static_cast<Index>(n_rays));
        sys.setZero();
        for (std::size_t t = 0; t < dep.size(); ++t) {
            const std::size_t j = dep[t];
            RVec alpha = basis_lu.solve(report.rays[j]);
            for (std::size_t k = 0; k < nb; ++k) {
                const std::size_t ik = static_cast<std::size_t>(basis[k]);
                sys.block(static_cast<Index>(t) * dim, static_cast<Index>(ik), dim, 1) =
                    alpha(static_cast<Index>(k)) *
                    report.dual_rays[static_cast<std::size_t>(pi[ik])];
            }
            sys.block(static_cast<Index>(t) * dim, static_cast<Index>(j), dim, 1) =
                -report.dual_rays[static_cast<std::size_t>(pi[j])];
        }
        RMat lambda_space = dep.empty() ? RMat::Identity(static_cast<Index>(n_rays),
                                                         static_cast<Index>(n_rays))
                                        : kernel_basis(sys);
        auto lambda = detail::positive_in_span(lambda_space);
        if (!lambda) return false;

        // Build T from the basis images and verify on every ray.
        RMat images(dim, static_cast<Index>(nb));
        for (std::size_t k = 0; k < nb; ++k) {
            const std::size_t ik = static_cast<std::size_t>(basis[k]);
            images.col(static_cast<Index>(k)) =
                (*lambda)(static_cast<Index>(ik)) *
                report.dual_rays[static_cast<std::size_t>(pi[ik])];
        }
        RMat t_map = images * basis_lu.inverse();
        if (Eigen::FullPivLU<RMat>(t_map).rank() != dim) return false;
        for (std::size_t i = 0; i < n_rays; ++i) {
            if ((*lambda)(static_cast<Index>(i)) <= 0) return false;
            RVec lhs = t_map * report.rays[i];
            RVec rhs = (*lambda)(static_cast<Index>(i)) *
                       report.dual_rays[static_cast<std::size_t>(pi[i])];
            if (lhs != rhs) return false;
        }
        SelfDualityCertificate cert;
        cert.map = std::move(t_map);
        cert.pairing.resize(n_rays);
        cert.scales.resize(n_rays);
        for (std::size_t i = 0; i < n_rays; ++i) {
            cert.pairing[i] = static_cast<std::size_t>(pi[i]);
            cert.scales[i] = (*lambda)(static_cast<Index>(i));
        }
        found = std::move(cert);
        return true;
    };

    // Depth-first over color- and adjacency-consistent bijections.
    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (candidates_tested >= limits.max_candidates || nodes >= limits.max_nodes) {
            report.search_exhausted = true;
            return false;
        }
        if (depth == n_rays) return try_candidate(assigned);
        const std::size_t i = order[depth];
        for (std::size_t j = 0; j < n_rays; ++j) {
            if (used[j] || color_d[j] != color_p[i]) continue;
            bool consistent = true;
            for (std::size_t d = 0; d < depth && consistent; ++d) {
                const std::size_t k = order[d];
                if (adj_p[i][k] != adj_d[j][static_cast<std::size_t>(assigned[k])])
                    consistent = false;
            }
            if (!consistent) continue;
            ++nodes;
            assigned[i] = static_cast<long>(j);
            used[j] = true;
            if (self(self, depth + 1)) return true;
            assigned[i] = -1;
            used[j] = false;
        }
        return false;
    };
    dfs(dfs, 0);
    report.certificate = std::move(found);
    return report;
}

}  // namespace gptbox
