/**
 * Single-system GPT definitions: state spaces as exact convex polytopes,
 * effects as linear functionals, and the builders used throughout (classical
 * simplices, the boxworld square and hypercubes, and the square-to-simplex
 * transition family).
 *
 * Representation: states are vectors whose last coordinate is 1 and the unit
 * measure is the last coordinate functional, so normalization u·w = 1 is
 * built into the embedding.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gptbox/polyhedra.hpp"

namespace gptbox {

/// A single GPT system: extremal normalized states plus the unit measure.
struct SystemSpec {
    std::string name;
    Index dim = 0;
    std::vector<RVec> states;  ///< extremal normalized states (no redundancy)
    RVec unit;
    /// Transition parameters when the system comes from the square family.
    std::optional<std::pair<Rational, Rational>> params;
};

/// Linear functional with values in [0,1] on every state of its system.
struct Effect {
    RVec functional;
};

/// Effects summing exactly to the unit measure.
struct Measurement {
    std::vector<RVec> outcomes;
};

inline bool is_valid_effect(const RVec& f, const SystemSpec& sys) {
    for (const RVec& w : sys.states) {
        const Rational v = f.dot(w);
        if (v < 0 || v > 1) return false;
    }
    return true;
}

inline bool is_valid_measurement(const Measurement& m, const SystemSpec& sys) {
    RVec sum = RVec::Zero(sys.dim);
    for (const RVec& f : m.outcomes) {
        if (!is_valid_effect(f, sys)) return false;
        sum += f;
    }
    return sum == sys.unit;
}

/// Binary measurement {e, u - e}.
inline Measurement binary_measurement(const RVec& effect, const SystemSpec& sys) {
    return Measurement{{effect, RVec(sys.unit - effect)}};
}

/**
 * The boxworld square: two fiducial binary measurements, state space a
 * square with extremal states (1,0,1), (0,1,1), (-1,0,1), (0,-1,1) and unit
 * measure (0,0,1).
 */
inline SystemSpec make_square_system() {
    SystemSpec s;
    s.name = "square";
    s.dim = 3;
    s.unit = rvec({0, 0, 1});
    s.states = {rvec({1, 0, 1}), rvec({0, 1, 1}), rvec({-1, 0, 1}), rvec({0, -1, 1})};
    return s;
}

/**
 * Square-family transition system: the square with its first extremal state
 * moved to (x, y, 1), x in [0,1], y in [x-1, 1-x]. x = 1, y = 0 is the
 * square itself; x = 0 degenerates to a classical triangle (the moved state
 * falls onto an edge and is dropped from the extremal list).
 */
inline SystemSpec make_modified_square(const Rational& x, const Rational& y) {
    if (x < 0 || x > 1 || y < x - 1 || y > 1 - x)
        throw std::domain_error("make_modified_square: requires x in [0,1], y in [x-1, 1-x]");
    SystemSpec s;
    s.name = "modified-square";
    s.dim = 3;
    s.unit = rvec({0, 0, 1});
    s.params = std::make_pair(x, y);
    std::vector<RVec> candidates = {rvec({x, y, 1}), rvec({0, 1, 1}), rvec({-1, 0, 1}),
                                    rvec({0, -1, 1})};
    s.states = extreme_points(std::move(candidates), 3);
    return s;
}

/**
 * Classical system with n pure states: states are the standard basis of R^n,
 * the unit measure is all-ones, and the basis functionals distinguish the
 * states (e_i(w_j) = delta_ij).
 */
inline SystemSpec make_simplex_system(int n) {
    if (n < 1) throw std::domain_error("make_simplex_system: n >= 1 required");
    SystemSpec s;
    s.name = "simplex-" + std::to_string(n);
    s.dim = n;
    s.unit = RVec::Constant(n, Rational(1));
    for (int i = 0; i < n; ++i) {
        RVec w = RVec::Zero(n);
        w(i) = 1;
        s.states.push_back(std::move(w));
    }
    return s;
}

/**
 * Boxworld single system with k independent fiducial binary measurements:
 * the state space is the k-hypercube embedded at height 1 in R^(k+1).
 * k = 2 is the square up to the labelling of coordinates.
 */
inline SystemSpec make_hypercube_system(int k) {
    if (k < 1) throw std::domain_error("make_hypercube_system: k >= 1 required");
    SystemSpec s;
    s.name = "hypercube-" + std::to_string(k);
    s.dim = k + 1;
    s.unit = RVec::Zero(k + 1);
    s.unit(k) = 1;
    for (long mask = 0; mask < (1L << k); ++mask) {
        RVec w(k + 1);
        for (int i = 0; i < k; ++i) w(i) = (mask >> i) & 1 ? Rational(1) : Rational(-1);
        w(k) = 1;
        s.states.push_back(std::move(w));
    }
    return s;
}

/// Cone of unnormalized states (generated by the extremal states).
inline Cone state_cone(const SystemSpec& sys) { return make_cone(sys.states, sys.dim); }

/// Dual cone of the state cone; its rays are the extremal effect directions.
inline Cone effect_cone(const SystemSpec& sys) { return dual_cone(state_cone(sys)); }

/**
 * Extreme points of the effect polytope {f : 0 <= f·w <= 1 on all states},
 * canonically ordered. Always contains the zero functional and the unit
 * measure.
 */
inline std::vector<RVec> effect_extremals(const SystemSpec& sys) {
    std::vector<Halfspace> ineqs;
    ineqs.reserve(2 * sys.states.size());
    for (const RVec& w : sys.states) {
        ineqs.push_back(Halfspace{w, Rational(1)});    //  f·w <= 1
        ineqs.push_back(Halfspace{RVec(-w), Rational(0)});  // -f·w <= 0
    }
    return enumerate_vertices(ineqs, {}, sys.dim);
}

/// Effect extremals with the zero functional and the unit measure removed;
/// these are the effects worth enumerating in measurements.
inline std::vector<RVec> nontrivial_effect_extremals(const SystemSpec& sys) {
    std::vector<RVec> out;
    for (RVec& f : effect_extremals(sys)) {
        if (f == RVec::Zero(sys.dim) || f == sys.unit) continue;
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace gptbox
