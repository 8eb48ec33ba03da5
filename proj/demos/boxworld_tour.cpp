/**
 * A short tour: build the boxworld square, compose it three ways, find the
 * maximal CHSH value of each composite, and run the entanglement swapping
 * scan on the weakly self-dual composite.
 */

#include <iostream>

#include "gptbox/gptbox.hpp"

using namespace gptbox;

int main() {
    const SystemSpec sq = make_square_system();
    std::cout << "single square: " << sq.states.size() << " extremal states, "
              << effect_extremals(sq).size() << " effect extremals\n";

    const JointSystem mn = min_tensor(sq, sq);
    const JointSystem mx = max_tensor(sq, sq);
    const JointSystem cu = boxworld::weakly_self_dual_composite();
    for (const JointSystem* j : {&mn, &mx, &cu})
        std::cout << to_string(j->kind) << " composite: " << j->joint_states.size()
                  << " joint states, " << j->joint_effect_rays.size() << " effect rays, max CHSH "
                  << to_short_string(max_chsh(*j).value) << "\n";

    std::cout << "\ntransition family, y = 0:\n";
    for (int i = 0; i <= 4; ++i) {
        const Rational x(i, 4);
        std::cout << "  x = " << to_short_string(x) << ": max CHSH "
                  << to_short_string(chsh_formula(x, 0)) << "\n";
    }

    std::cout << "\nswapping scan on the weakly self-dual composite:\n";
    int outside = 0;
    for (const auto& row : swap_scan())
        if (row.in_custom && !*row.in_custom) ++outside;
    std::cout << "  " << outside << " of 64 collapses land outside the chosen composite\n";
    return 0;
}
