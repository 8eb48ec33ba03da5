/**
 * Four-party composites built from two bipartite states, and entanglement
 * swapping by contracting an effect against the two inner parties.
 *
 * Layout contract: a four-party vector on systems A, B, C, D is flattened
 * A-major-nested, component (i, j, k, l) at ((i*dB + j)*dC + k)*dD + l.
 * Under this convention the product of an AB vector (A-major, i*dB + j) and
 * a CD vector (k*dD + l) is their plain Kronecker product: no reordering is
 * needed for the product, but contractions over (B, D) must walk the nested
 * index arithmetic, which is what the dedicated layout tests pin down.
 */

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gptbox/tensor.hpp"

namespace gptbox {

/// State of a four-party composite A, B, C, D with per-party dimensions.
struct FourPartyState {
    std::array<Index, 4> dims{};
    RVec data;  ///< dimension dims[0]*dims[1]*dims[2]*dims[3]
    RVec unit;  ///< u_A (x) u_B (x) u_C (x) u_D
};

/// Product of bipartite states on AB and CD (plain Kronecker under the layout).
inline FourPartyState product_of_bipartite(const RVec& state_ab, const RVec& unit_ab,
                                           Index dim_a, Index dim_b, const RVec& state_cd,
                                           const RVec& unit_cd, Index dim_c, Index dim_d) {
    if (state_ab.size() != dim_a * dim_b || state_cd.size() != dim_c * dim_d)
        throw std::invalid_argument("product_of_bipartite: dimension mismatch");
    FourPartyState s;
    s.dims = {dim_a, dim_b, dim_c, dim_d};
    s.data = kron(state_ab, state_cd);
    s.unit = kron(unit_ab, unit_cd);
    return s;
}

/// Result of measuring the inner parties: outcome probability and the
/// normalized posterior on (A, C), absent when the probability is zero.
struct CollapseResult {
    Rational probability;
    std::optional<RVec> posterior;  ///< normalized AC state, A-major
};

/**
 * Contract an effect on the inner parties (B, D) against a four-party state:
 * the unnormalized posterior is ac[i,k] = sum_{j,l} e[j*dD + l] * s[i,j,k,l],
 * the probability is the joint unit of (A, C) applied to it.
 *
 * The effect is indexed B-major over (B, D), matching the joint-effect
 * convention of the bipartite composites.
 */
inline CollapseResult collapse_inner(const FourPartyState& s, const RVec& effect_bd,
                                     const RVec& unit_a, const RVec& unit_c) {
    const auto [da, db, dc, dd] = s.dims;
    if (effect_bd.size() != db * dd)
        throw std::invalid_argument("collapse_inner: effect layout mismatch");
    if (unit_a.size() != da || unit_c.size() != dc)
        throw std::invalid_argument("collapse_inner: unit dimension mismatch");
    RVec ac = RVec::Zero(da * dc);
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < db; ++j)
            for (Index k = 0; k < dc; ++k)
                for (Index l = 0; l < dd; ++l)
                    ac(i * dc + k) +=
                        effect_bd(j * dd + l) * s.data(((i * db + j) * dc + k) * dd + l);
    CollapseResult res;
    res.probability = kron(unit_a, unit_c).dot(ac);
    if (res.probability != 0) res.posterior = RVec(ac / res.probability);
    return res;
}

/// Marginal of a bipartite state on its first party (unit applied to the second).
inline RVec marginal_first(const RVec& state_ab, const RVec& unit_b, Index dim_a) {
    const Index db = unit_b.size();
    RVec out = RVec::Zero(dim_a);
    for (Index i = 0; i < dim_a; ++i)
        for (Index j = 0; j < db; ++j) out(i) += unit_b(j) * state_ab(i * db + j);
    return out;
}

/// Marginal on the second party.
inline RVec marginal_second(const RVec& state_ab, const RVec& unit_a, Index dim_b) {
    const Index da = unit_a.size();
    RVec out = RVec::Zero(dim_b);
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < dim_b; ++j) out(j) += unit_a(i) * state_ab(i * dim_b + j);
    return out;
}

/// One row of the swapping scan.
struct SwapScanRow {
    int state_ab = 0;   ///< conventional index of the AB entangled state
    int state_cd = 0;   ///< conventional index of the CD entangled state
    int effect_bd = 0;  ///< conventional index of the BD entangled effect
    Rational probability;
    std::string posterior_id;  ///< "w<k>" for a conventional extremal, "mixed", or "none"
    std::optional<bool> in_max;     ///< posterior membership in the maximal composite cone
    std::optional<bool> in_custom;  ///< posterior membership in the custom composite cone
};

/**
 * Scan all combinations of kept entangled states on AB and CD against the
 * entangled effects on BD of the two-square weakly self-dual composite:
 * collapse, identify the posterior against the conventional extremal list,
 * and report cone membership against both the maximal and custom composites.
 *
 * Effects are used in their "maximal value 1 on the kept joint states"
 * normalization so every probability is a genuine outcome probability.
 */
inline std::vector<SwapScanRow> swap_scan() {
    const SystemSpec sq = make_square_system();
    const JointSystem maximal = max_tensor(sq, sq);
    const JointSystem custom = boxworld::weakly_self_dual_composite();

    Cone max_cone = make_cone(maximal.joint_states, 9);
    Cone custom_cone = make_cone(custom.joint_states, 9);

    // Normalize each entangled effect ray to top value 1 on the kept states.
    std::vector<RVec> effects;
    for (int e = 17; e <= 20; ++e) {
        RVec ray = boxworld::entangled_effect_ray(e);
        Rational top = 0;
        for (const RVec& w : custom.joint_states) {
            const Rational v = ray.dot(w);
            if (v > top) top = v;
        }
        effects.push_back(RVec(ray / top));
    }

    std::vector<SwapScanRow> rows;
    for (int ab = 17; ab <= 20; ++ab)
        for (int cd = 17; cd <= 20; ++cd)
            for (int e = 17; e <= 20; ++e) {
                FourPartyState s = product_of_bipartite(
                    boxworld::joint_state(ab), maximal.unit, 3, 3,
                    boxworld::joint_state(cd), maximal.unit, 3, 3);
                CollapseResult c = collapse_inner(s, effects[static_cast<std::size_t>(e - 17)],
                                                  sq.unit, sq.unit);
                SwapScanRow row;
                row.state_ab = ab;
                row.state_cd = cd;
                row.effect_bd = e;
                row.probability = c.probability;
                if (!c.posterior) {
                    row.posterior_id = "none";
                } else {
                    const int idx = boxworld::conventional_index(*c.posterior);
                    row.posterior_id = idx > 0 ? "w" + std::to_string(idx) : "mixed";
                    row.in_max = cone_membership(*c.posterior, max_cone).inside;
                    row.in_custom = cone_membership(*c.posterior, custom_cone).inside;
                }
                rows.push_back(std::move(row));
            }
    return rows;
}

/// CSV rendering with the fixed header
/// "stateAB,stateCD,effectBD,probability,posterior_id,in_max,in_custom".
inline std::string swap_scan_csv(const std::vector<SwapScanRow>& rows) {
    std::string out = "stateAB,stateCD,effectBD,probability,posterior_id,in_max,in_custom\n";
    for (const SwapScanRow& r : rows) {
        out += "w" + std::to_string(r.state_ab) + ",w" + std::to_string(r.state_cd) + ",e" +
               std::to_string(r.effect_bd) + "," + to_fraction_string(r.probability) + "," +
               r.posterior_id + ",";
        out += r.in_max ? (*r.in_max ? "1" : "0") : "";
        out += ",";
        out += r.in_custom ? (*r.in_custom ? "1" : "0") : "";
        out += "\n";
    }
    return out;
}

}  // namespace gptbox
