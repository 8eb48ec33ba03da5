/**
 * Bipartite composites of GPT systems: minimal (separable-only), maximal
 * (every state consistent with product effects) and custom (separable states
 * plus a chosen subset of the maximal entangled extremals) tensor products,
 * with the dual effect cone computed exactly for each.
 *
 * Layout contract: a joint vector on systems A (dim a) and B (dim b) lives in
 * R^(a*b) with A-major flattening, component (i,j) stored at i*b + j. The
 * Kronecker product of vectors follows the same convention.
 */

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gptbox/system.hpp"

namespace gptbox {

/// Kronecker product under the A-major layout.
inline RVec kron(const RVec& a, const RVec& b) {
    RVec out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i)
        for (Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
    return out;
}

enum class JointKind { minimal, maximal, custom };

inline const char* to_string(JointKind k) {
    switch (k) {
        case JointKind::minimal: return "minimal";
        case JointKind::maximal: return "maximal";
        case JointKind::custom: return "custom";
    }
    return "?";
}

/**
 * A bipartite joint system: extremal joint states, extremal joint effect
 * rays (the dual cone of the joint state cone) and the joint unit measure.
 */
struct JointSystem {
    SystemSpec party_a;
    SystemSpec party_b;
    JointKind kind = JointKind::maximal;
    std::vector<int> kept_indices;     ///< conventional indices of kept entangled extremals (custom only)
    std::vector<RVec> joint_states;    ///< canonical vertex list
    std::vector<RVec> joint_effect_rays;  ///< canonical extremal rays of the dual cone
    RVec unit;

    Index dim() const { return party_a.dim * party_b.dim; }
};

namespace detail {

inline std::vector<RVec> product_states(const SystemSpec& a, const SystemSpec& b) {
    std::vector<RVec> out;
    out.reserve(a.states.size() * b.states.size());
    for (const RVec& wa : a.states)
        for (const RVec& wb : b.states) out.push_back(kron(wa, wb));
    sort_unique(out);
    return out;
}

}  // namespace detail

/**
 * Maximal tensor product: every normalized vector nonnegative under all
 * products of extremal effects. States come from exact vertex enumeration;
 * the joint effect cone is the minimal one (extremal product effect rays).
 */
inline JointSystem max_tensor(const SystemSpec& a, const SystemSpec& b) {
    JointSystem joint;
    joint.party_a = a;
    joint.party_b = b;
    joint.kind = JointKind::maximal;
    joint.unit = kron(a.unit, b.unit);
    const Index dim = a.dim * b.dim;

    std::vector<Halfspace> ineqs;
    for (const RVec& ea : nontrivial_effect_extremals(a))
        for (const RVec& eb : nontrivial_effect_extremals(b))
            ineqs.push_back(Halfspace{RVec(-kron(ea, eb)), Rational(0)});
    std::vector<std::pair<RVec, Rational>> eqs = {{joint.unit, Rational(1)}};
    joint.joint_states = enumerate_vertices(ineqs, eqs, dim);

    std::vector<RVec> effect_gens;
    for (const RVec& fa : dual_cone(state_cone(a)).rays)
        for (const RVec& fb : dual_cone(state_cone(b)).rays) effect_gens.push_back(kron(fa, fb));
    joint.joint_effect_rays = extreme_rays_of_generators(std::move(effect_gens), dim);
    return joint;
}

/// Minimal tensor product: products of extremal states; effect cone by duality.
inline JointSystem min_tensor(const SystemSpec& a, const SystemSpec& b) {
    JointSystem joint;
    joint.party_a = a;
    joint.party_b = b;
    joint.kind = JointKind::minimal;
    joint.unit = kron(a.unit, b.unit);
    joint.joint_states = detail::product_states(a, b);
    joint.joint_effect_rays = dual_cone(make_cone(joint.joint_states, joint.dim())).rays;
    return joint;
}

/**
 * Custom tensor product: separable extremals plus the given entangled states,
 * each of which must be a vertex of the maximal tensor product. The joint
 * effect cone is recomputed by duality, which is where entangled effects
 * appear once enough entangled states are excluded.
 */
inline JointSystem custom_tensor(const SystemSpec& a, const SystemSpec& b,
                                 const std::vector<RVec>& kept_entangled) {
    JointSystem maximal = max_tensor(a, b);
    const Index dim = a.dim * b.dim;

    Cone max_cone = make_cone(maximal.joint_states, dim);
    for (const RVec& k : kept_entangled) {
        MembershipResult m = cone_membership(k, max_cone);
        if (!m.inside) {
            throw std::invalid_argument(
                "custom_tensor: kept state outside the maximal tensor product; separating "
                "functional " +
                [&] {
                    std::string s;
                    for (Index i = 0; i < m.separator->size(); ++i)
                        s += (i ? "," : "(") + to_short_string((*m.separator)(i));
                    return s + ")";
                }());
        }
        bool is_vertex = false;
        for (const RVec& v : maximal.joint_states)
            if (v == k) { is_vertex = true; break; }
        if (!is_vertex)
            throw std::invalid_argument("custom_tensor: kept state is not an extremal of the "
                                        "maximal tensor product");
    }

    JointSystem joint;
    joint.party_a = a;
    joint.party_b = b;
    joint.kind = JointKind::custom;
    joint.unit = maximal.unit;
    joint.joint_states = detail::product_states(a, b);
    joint.joint_states.insert(joint.joint_states.end(), kept_entangled.begin(),
                              kept_entangled.end());
    sort_unique(joint.joint_states);
    joint.joint_effect_rays = dual_cone(make_cone(joint.joint_states, dim)).rays;
    return joint;
}

/// Separability decision for a normalized joint state.
struct SeparabilityResult {
    bool separable = false;
    /// Convex decomposition over product extremals (index into the canonical
    /// product list, coefficient) when separable.
    std::vector<std::pair<std::size_t, Rational>> decomposition;
    std::optional<RVec> separator;  ///< certificate when entangled
};

namespace detail {

/**
 * First (by support size, then lexicographic subset order) exact solution of
 * sum_i c_i basis[i] = target over subsets of linearly independent columns.
 * `convex` restricts to nonnegative coefficients. Complete by Caratheodory:
 * any conic/affine combination is realizable on an independent subset.
 */
inline std::optional<std::vector<std::pair<std::size_t, Rational>>> subset_decomposition(
    const std::vector<RVec>& pool, const RVec& target, Index dim, bool require_nonneg) {
    const std::size_t n = pool.size();
    const std::size_t max_size =
        std::min<std::size_t>(n, static_cast<std::size_t>(rank(stack_rows(pool, dim))));
    std::vector<std::size_t> idx;
    // Size-ascending subset enumeration in lexicographic order.
    auto run = [&](auto&& self, std::size_t start, std::size_t want)
        -> std::optional<std::vector<std::pair<std::size_t, Rational>>> {
        if (idx.size() == want) {
            RMat m(dim, static_cast<Index>(want));
            for (std::size_t k = 0; k < want; ++k) m.col(static_cast<Index>(k)) = pool[idx[k]];
            if (rank(m) != static_cast<Index>(want)) return std::nullopt;
            auto sol = solve_linear(m, target);
            if (!sol) return std::nullopt;
            std::vector<std::pair<std::size_t, Rational>> out;
            for (std::size_t k = 0; k < want; ++k) {
                const Rational& c = (*sol)(static_cast<Index>(k));
                if (require_nonneg && c < 0) return std::nullopt;
                if (c != 0) out.emplace_back(idx[k], c);
            }
            return out;
        }
        for (std::size_t i = start; i + (want - idx.size()) <= n; ++i) {
            idx.push_back(i);
            auto r = self(self, i + 1, want);
            idx.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    };
    for (std::size_t size = 1; size <= max_size; ++size) {
        auto r = run(run, 0, size);
        if (r) return r;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Decide whether a normalized joint state lies in the minimal tensor product
 * of the joint system's parties. Separable states come with an exact convex
 * decomposition over product extremals; entangled states come with a
 * separating functional.
 */
inline SeparabilityResult is_separable(const RVec& state, const JointSystem& joint) {
    SeparabilityResult res;
    std::vector<RVec> products = detail::product_states(joint.party_a, joint.party_b);
    MembershipResult m = cone_membership(state, products, joint.dim());
    if (!m.inside) {
        res.separable = false;
        res.separator = m.separator;
        return res;
    }
    auto dec = detail::subset_decomposition(products, state, joint.dim(), true);
    if (!dec)
        throw std::logic_error("is_separable: membership and decomposition disagree");
    res.separable = true;
    res.decomposition = *dec;
    return res;
}

/**
 * An affine decomposition of a joint state over the canonical product-state
 * list: coefficients sum to 1 but may be negative. Product states are
 * overcomplete, so the canonical answer is the minimum-support solution
 * under deterministic subset order. Throws when the state is outside the
 * product span.
 */
inline std::vector<std::pair<std::size_t, Rational>> affine_decomposition(
    const RVec& state, const JointSystem& joint) {
    std::vector<RVec> products = detail::product_states(joint.party_a, joint.party_b);
    // Lift by one coordinate to carry the sum-to-one constraint.
    std::vector<RVec> lifted;
    lifted.reserve(products.size());
    for (const RVec& p : products) {
        RVec z(p.size() + 1);
        z.head(p.size()) = p;
        z(p.size()) = 1;
        lifted.push_back(std::move(z));
    }
    RVec target(state.size() + 1);
    target.head(state.size()) = state;
    target(state.size()) = 1;
    auto dec = detail::subset_decomposition(lifted, target, joint.dim() + 1, false);
    if (!dec)
        throw std::invalid_argument(
            "affine_decomposition: state is not an affine combination of product states");
    return *dec;
}

/// Canonical product-state list a decomposition indexes into.
inline std::vector<RVec> product_state_list(const JointSystem& joint) {
    return detail::product_states(joint.party_a, joint.party_b);
}

// ---------------------------------------------------------------------------
// Conventional indexing of the two-square composite.
//
// The 24 extremal joint states of the maximal tensor product of two squares
// carry conventional indices: 1..16 are the product states w_i (x) w_j at
// index 4(i-1)+j, and 17..24 are the entangled extremals, each half the
// signed sum of four product states. The custom weakly self-dual composite
// keeps 17..20 and gains the matching entangled effect rays.
// ---------------------------------------------------------------------------

namespace boxworld {

struct SignedProductTerm {
    int sign;    ///< +1 or -1
    int left;    ///< index 1..4 into the square's states/effect rays
    int right;
};

/// Combination patterns for the entangled joint states 17..24.
inline const std::array<std::array<SignedProductTerm, 4>, 8>& entangled_state_patterns() {
    static const std::array<std::array<SignedProductTerm, 4>, 8> patterns = {{
        {{{+1, 1, 2}, {-1, 2, 2}, {+1, 2, 3}, {+1, 3, 1}}},  // 17
        {{{+1, 2, 2}, {-1, 3, 3}, {+1, 3, 4}, {+1, 4, 3}}},  // 18
        {{{+1, 1, 1}, {-1, 2, 2}, {+1, 2, 3}, {+1, 3, 2}}},  // 19
        {{{+1, 2, 2}, {-1, 3, 2}, {+1, 3, 3}, {+1, 4, 1}}},  // 20
        {{{+1, 1, 4}, {-1, 1, 1}, {+1, 2, 1}, {+1, 4, 2}}},  // 21
        {{{+1, 1, 4}, {-1, 1, 1}, {+1, 2, 2}, {+1, 4, 1}}},  // 22
        {{{+1, 1, 1}, {-1, 1, 2}, {+1, 2, 2}, {+1, 4, 3}}},  // 23
        {{{+1, 1, 1}, {-1, 1, 4}, {+1, 2, 4}, {+1, 4, 3}}},  // 24
    }};
    return patterns;
}

/// The four extremal effects of the square, paired index-for-index with its states.
inline std::vector<RVec> square_effects() {
    return {rvec({Rational(-1, 2), Rational(-1, 2), Rational(1, 2)}),
            rvec({Rational(1, 2), Rational(-1, 2), Rational(1, 2)}),
            rvec({Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
            rvec({Rational(-1, 2), Rational(1, 2), Rational(1, 2)})};
}

/// Joint state with conventional index 1..24 (two-square maximal composite).
inline RVec joint_state(int index) {
    const SystemSpec sq = make_square_system();
    if (index >= 1 && index <= 16) {
        const int i = (index - 1) / 4, j = (index - 1) % 4;
        return kron(sq.states[static_cast<std::size_t>(i)], sq.states[static_cast<std::size_t>(j)]);
    }
    if (index >= 17 && index <= 24) {
        const auto& terms = entangled_state_patterns()[static_cast<std::size_t>(index - 17)];
        RVec acc = RVec::Zero(9);
        for (const auto& t : terms)
            acc += Rational(t.sign) * kron(sq.states[static_cast<std::size_t>(t.left - 1)],
                                           sq.states[static_cast<std::size_t>(t.right - 1)]);
        return RVec(acc / 2);
    }
    throw std::out_of_range("joint_state: conventional index must be 1..24");
}

/// All 24 joint states in conventional order (1-based index shifted to 0).
inline std::vector<RVec> joint_states() {
    std::vector<RVec> all;
    all.reserve(24);
    for (int i = 1; i <= 24; ++i) all.push_back(joint_state(i));
    return all;
}

/**
 * Entangled effect direction with conventional index 17..20: the signed
 * product-effect combination mirroring the matching entangled state. The
 * returned vector is the canonical integer-scaled ray; callers pick their
 * own normalization.
 */
inline RVec entangled_effect_ray(int index) {
    if (index < 17 || index > 20)
        throw std::out_of_range("entangled_effect_ray: conventional index must be 17..20");
    const auto effs = square_effects();
    const auto& terms = entangled_state_patterns()[static_cast<std::size_t>(index - 17)];
    RVec acc = RVec::Zero(9);
    for (const auto& t : terms)
        acc += Rational(t.sign) * kron(effs[static_cast<std::size_t>(t.left - 1)],
                                       effs[static_cast<std::size_t>(t.right - 1)]);
    return canonical_scale(acc);
}

/// The custom composite of two squares keeping entangled states 17..20.
inline JointSystem weakly_self_dual_composite() {
    const SystemSpec sq = make_square_system();
    std::vector<RVec> kept;
    for (int i = 17; i <= 20; ++i) kept.push_back(joint_state(i));
    JointSystem j = custom_tensor(sq, sq, kept);
    j.kept_indices = {17, 18, 19, 20};
    return j;
}

/// Conventional index (1..24) of a joint vector, or 0 when it matches none.
inline int conventional_index(const RVec& v) {
    for (int i = 1; i <= 24; ++i)
        if (joint_state(i) == v) return i;
    return 0;
}

}  // namespace boxworld

}  // namespace gptbox
