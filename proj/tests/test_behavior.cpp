#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gptbox/behavior.hpp"
#include "oracles.hpp"

using namespace gptbox;

namespace {

Measurement fiducial(int effect_index, const SystemSpec& sys) {
    return binary_measurement(boxworld::square_effects()[static_cast<std::size_t>(effect_index - 1)],
                              sys);
}

Behavior mix(const Behavior& a, const Behavior& b, const Rational& t) {
    Behavior out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int aa = 0; aa < 2; ++aa)
                for (int bb = 0; bb < 2; ++bb)
                    out.at(x, y, aa, bb) = t * a.at(x, y, aa, bb) + (1 - t) * b.at(x, y, aa, bb);
    return out;
}

Behavior uniform_behavior() {
    Behavior beh;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) beh.at(x, y, a, b) = Rational(1, 4);
    return beh;
}

/// Vector view of a behavior for the hull oracle.
RVec behavior_vector(const Behavior& b) {
    RVec v(16);
    Index k = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) v(k++) = b.at(x, y, a, bb);
    return v;
}

}  // namespace

TEST_CASE("product states with fiducial measurements give deterministic tables", "[behavior]") {
    const SystemSpec sq = make_square_system();
    const RVec w11 = kron(sq.states[0], sq.states[0]);
    const Behavior b = behavior_from(w11, {fiducial(3, sq), fiducial(2, sq)},
                                     {fiducial(3, sq), fiducial(2, sq)});
    CHECK(b.normalized());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int ones = 0;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    if (b.at(x, y, a, bb) == 1) ++ones;
            CHECK(ones == 1);
        }
    CHECK(check_no_signalling(b).holds);
    CHECK(is_local(b));
    CHECK(chsh_value(b).value == 2);
}

TEST_CASE("the first entangled extremal yields a PR box under fiducial measurements",
          "[behavior]") {
    const SystemSpec sq = make_square_system();
    const Behavior b = behavior_from(boxworld::joint_state(17), {fiducial(3, sq), fiducial(2, sq)},
                                     {fiducial(3, sq), fiducial(2, sq)});
    // only the entries 0 and 1/2 appear
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    CHECK((b.at(x, y, a, bb) == 0 || b.at(x, y, a, bb) == Rational(1, 2)));
    const auto pr = is_pr_box(b);
    CHECK(pr.is_pr);
    CHECK(pr.alpha == 1);
    CHECK(pr.beta == 0);
    CHECK(pr.gamma == 1);
    CHECK(chsh_value(b).value == 4);
    CHECK(check_no_signalling(b).holds);
}

TEST_CASE("behavior_from validates inputs", "[behavior]") {
    const SystemSpec sq = make_square_system();
    CHECK_THROWS_AS(behavior_from(rvec({1, 0, 1}), {fiducial(3, sq), fiducial(2, sq)},
                                  {fiducial(3, sq), fiducial(2, sq)}),
                    std::invalid_argument);
    Measurement triple{{sq.unit, RVec(RVec::Zero(3)), RVec(RVec::Zero(3))}};
    CHECK_THROWS_AS(behavior_from(boxworld::joint_state(1), {triple, triple},
                                  {fiducial(3, sq), fiducial(2, sq)}),
                    std::invalid_argument);
}

TEST_CASE("no-signalling holds for PR boxes and deterministic tables", "[behavior]") {
    CHECK(check_no_signalling(pr_box()).holds);
    for (const Behavior& d : deterministic_behaviors()) CHECK(check_no_signalling(d).holds);
}

TEST_CASE("a signalling table is flagged with the violating marginal", "[behavior]") {
    // Alice's outcome tracks Bob's input: a = y deterministically.
    Behavior bad;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) bad.at(x, y, y, 0) = 1;
    const auto res = check_no_signalling(bad);
    CHECK_FALSE(res.holds);
    CHECK(res.violation.find("alice") != std::string::npos);
    CHECK_THROWS_AS(is_local(bad), std::invalid_argument);
}

TEST_CASE("chsh_value reproduces the landmark values", "[behavior]") {
    CHECK(chsh_value(pr_box()).value == 4);
    CHECK(chsh_value(uniform_behavior()).value == 0);
    Behavior det;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) det.at(x, y, 0, 0) = 1;
    CHECK(chsh_value(det).value == 2);
}

TEST_CASE("chsh_value is invariant under relabellings of the behavior", "[behavior]") {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                CHECK(chsh_value(pr_box(alpha, beta, gamma)).value == 4);
}

TEST_CASE("chsh is affine in the behavior for a fixed relabelling", "[behavior]") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> num(0, 8);
    auto fixed_variant = [](const Behavior& b) {
        return correlator(b, 0, 0) + correlator(b, 0, 1) + correlator(b, 1, 0) -
               correlator(b, 1, 1);
    };
    const auto dets = deterministic_behaviors();
    for (int trial = 0; trial < 40; ++trial) {
        const Behavior a = dets[static_cast<std::size_t>(num(rng)) % dets.size()];
        const Behavior b = trial % 2 ? pr_box(trial % 2, (trial / 2) % 2, 0) : uniform_behavior();
        const Rational t(num(rng), 8);
        CHECK(fixed_variant(mix(a, b, t)) ==
              t * fixed_variant(a) + (1 - t) * fixed_variant(b));
    }
}

TEST_CASE("locality agrees with the deterministic-vertex hull oracle", "[behavior][oracle]") {
    CHECK_FALSE(is_local(pr_box()));
    for (const Behavior& d : deterministic_behaviors()) CHECK(is_local(d));

    const Behavior half = mix(pr_box(), uniform_behavior(), Rational(1, 2));
    CHECK(chsh_value(half).value == 2);
    CHECK(is_local(half));

    std::vector<RVec> det_vectors;
    for (const Behavior& d : deterministic_behaviors()) det_vectors.push_back(behavior_vector(d));

    // random no-signalling mixtures: PR weight above 1/2 is nonlocal, and the
    // CHSH criterion must agree with exact hull membership either way
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> num(0, 16);
    std::uniform_int_distribution<int> variant(0, 7);
    const auto dets = deterministic_behaviors();
    for (int trial = 0; trial < 24; ++trial) {
        const int v = variant(rng);
        const Behavior pr = pr_box(v & 1, (v >> 1) & 1, (v >> 2) & 1);
        const Behavior d = dets[static_cast<std::size_t>(num(rng)) % dets.size()];
        const Rational t(num(rng), 16);
        const Behavior sample = mix(pr, d, t);
        CHECK(is_local(sample) == oracle::in_convex_hull(behavior_vector(sample), det_vectors));
    }
}

TEST_CASE("is_pr_box identifies every variant and nothing else", "[behavior]") {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                const auto res = is_pr_box(pr_box(alpha, beta, gamma));
                CHECK(res.is_pr);
                CHECK(res.alpha == alpha);
                CHECK(res.beta == beta);
                CHECK(res.gamma == gamma);
            }
    CHECK_FALSE(is_pr_box(uniform_behavior()).is_pr);
    CHECK_FALSE(is_pr_box(deterministic_behaviors().front()).is_pr);
}

TEST_CASE("behaviors from composite states never signal", "[behavior]") {
    const SystemSpec sq = make_square_system();
    const JointSystem mx = max_tensor(sq, sq);
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> pick(1, 4);
    std::uniform_int_distribution<int> weight(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        // random rational vertex mixture
        RVec state = RVec::Zero(9);
        Rational total = 0;
        std::array<Rational, 24> w{};
        for (int i = 0; i < 24; ++i) {
            w[static_cast<std::size_t>(i)] = weight(rng);
            total += w[static_cast<std::size_t>(i)];
        }
        if (total == 0) continue;
        for (int i = 0; i < 24; ++i)
            state += (w[static_cast<std::size_t>(i)] / total) * mx.joint_states[static_cast<std::size_t>(i)];
        const Behavior b = behavior_from(
            state, {fiducial(pick(rng), sq), fiducial(pick(rng), sq)},
            {fiducial(pick(rng), sq), fiducial(pick(rng), sq)});
        CHECK(b.normalized());
        CHECK(check_no_signalling(b).holds);
    }
}
