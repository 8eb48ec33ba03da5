/**
 * Exact CHSH maximization over a joint system by brute force, the closed
 * form for the square-family transition, and the grid comparison of the two.
 *
 * The brute force ranges over every extremal joint state and every ordered
 * pair of extremal binary measurements per party. CHSH is affine in the
 * state and in each effect, so extreme points suffice; the zero functional
 * and the unit measure are excluded since they only generate constant
 * outcomes.
 */

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "gptbox/behavior.hpp"

namespace gptbox {

/// Argmax record of a brute-force CHSH search.
struct ChshWitness {
    Rational value;
    std::size_t state_index = 0;              ///< index into joint_states
    std::array<std::size_t, 2> alice_effects{};  ///< effect index per input x
    std::array<std::size_t, 2> bob_effects{};    ///< effect index per input y
    int minus_position = 3;
    int global_sign = +1;
};

/**
 * Exact maximum CHSH value of a joint system, with the witness that attains
 * it (first in canonical order on ties).
 */
inline ChshWitness max_chsh(const JointSystem& joint) {
    const std::vector<RVec> ea = nontrivial_effect_extremals(joint.party_a);
    const std::vector<RVec> eb = nontrivial_effect_extremals(joint.party_b);
    const Index db = joint.party_b.dim;

    ChshWitness best;
    best.value = -1;
    for (std::size_t si = 0; si < joint.joint_states.size(); ++si) {
        const RVec& state = joint.joint_states[si];
        // w[f][g] = ((2f - u) (x) (2g - u)) . state, so that each correlator
        // of a measurement choice is a single table lookup.
        std::vector<std::vector<Rational>> w(ea.size(), std::vector<Rational>(eb.size()));
        for (std::size_t i = 0; i < ea.size(); ++i) {
            const RVec fa = 2 * ea[i] - joint.party_a.unit;
            for (std::size_t j = 0; j < eb.size(); ++j) {
                const RVec gb = 2 * eb[j] - joint.party_b.unit;
                Rational acc = 0;
                for (Index p = 0; p < fa.size(); ++p)
                    for (Index q = 0; q < gb.size(); ++q)
                        acc += fa(p) * gb(q) * state(p * db + q);
                w[i][j] = acc;
            }
        }
        for (std::size_t a0 = 0; a0 < ea.size(); ++a0)
            for (std::size_t a1 = 0; a1 < ea.size(); ++a1)
                for (std::size_t b0 = 0; b0 < eb.size(); ++b0)
                    for (std::size_t b1 = 0; b1 < eb.size(); ++b1) {
                        const Rational c00 = w[a0][b0], c01 = w[a0][b1];
                        const Rational c10 = w[a1][b0], c11 = w[a1][b1];
                        const Rational total = c00 + c01 + c10 + c11;
                        const std::array<Rational, 4> c{c00, c01, c10, c11};
                        for (int pos = 0; pos < 4; ++pos) {
                            const Rational s = total - 2 * c[static_cast<std::size_t>(pos)];
                            for (int sign : {+1, -1}) {
                                if (sign * s > best.value) {
                                    best.value = sign * s;
                                    best.state_index = si;
                                    best.alice_effects = {a0, a1};
                                    best.bob_effects = {b0, b1};
                                    best.minus_position = pos;
                                    best.global_sign = sign;
                                }
                            }
                        }
                    }
    }
    return best;
}

/**
 * Closed form for the maximal CHSH value of the maximal composite of two
 * transition systems with parameters (x, y):
 *
 *   2 + 16 x^2 / (x^2 + (|y| - 1)^2 + 2 x (3 + |y|)).
 *
 * At x = 0 the system is classical and the value is 2; this also covers
 * |y| = 1 there, where the fraction is formally 0/0.
 */
inline Rational chsh_formula(const Rational& x, const Rational& y) {
    if (x < 0 || x > 1 || y < x - 1 || y > 1 - x)
        throw std::domain_error("chsh_formula: requires x in [0,1], y in [x-1, 1-x]");
    if (x == 0) return 2;
    const Rational ay = y < 0 ? Rational(-y) : y;
    const Rational num = 16 * x * x;
    const Rational den = x * x + (ay - 1) * (ay - 1) + 2 * x * (3 + ay);
    return 2 + num / den;
}

/// One grid point of the brute-force-versus-formula comparison.
struct SurfaceRow {
    Rational x, y;
    Rational brute;
    Rational formula;
    bool match = false;
};

/**
 * The CHSH surface over the rational grid x = i/n, y = j/n for admissible j,
 * comparing brute force against the closed form at every point. Grid points
 * are independent; `threads` > 1 distributes them (thread count can also be
 * set via the GPTBOX_THREADS environment variable; 0 means auto).
 */
inline std::vector<SurfaceRow> chsh_surface(int n, unsigned threads = 0) {
    if (n < 1) throw std::domain_error("chsh_surface: grid resolution must be >= 1");
    std::vector<std::pair<Rational, Rational>> grid;
    for (int i = 0; i <= n; ++i)
        for (int j = -(n - i); j <= n - i; ++j)
            grid.emplace_back(Rational(i, n), Rational(j, n));

    if (threads == 0) {
        if (const char* env = std::getenv("GPTBOX_THREADS"))
            threads = static_cast<unsigned>(std::atoi(env));
    }
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));

    std::vector<SurfaceRow> rows(grid.size());
    auto worker = [&](unsigned tid) {
        for (std::size_t k = tid; k < grid.size(); k += threads) {
            const auto& [x, y] = grid[k];
            const SystemSpec sys = make_modified_square(x, y);
            const JointSystem joint = max_tensor(sys, sys);
            SurfaceRow row;
            row.x = x;
            row.y = y;
            row.brute = max_chsh(joint).value;
            row.formula = chsh_formula(x, y);
            row.match = row.brute == row.formula;
            rows[k] = std::move(row);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    return rows;
}

/// CSV rendering of the surface with the fixed header "x,y,bruteforce,formula,match".
inline std::string surface_csv(const std::vector<SurfaceRow>& rows) {
    std::string out = "x,y,bruteforce,formula,match\n";
    for (const SurfaceRow& r : rows) {
        out += to_fraction_string(r.x) + "," + to_fraction_string(r.y) + "," +
               to_fraction_string(r.brute) + "," + to_fraction_string(r.formula) + "," +
               (r.match ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace gptbox
