/**
 * gptbox: exact GPT composites, CHSH optimization and entanglement swapping
 * from the command line. All numeric arguments and outputs are exact "p/q"
 * rationals; decimal input is rejected. Exit status encodes the headline
 * result of each command (0 = reproduced / holds).
 */

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gptbox/gptbox.hpp"

using namespace gptbox;

namespace {

struct SystemChoice {
    std::string system = "square";
    int n = 2;
    std::string x = "1";
    std::string y = "0";
};

SystemSpec build_system(const SystemChoice& c) {
    if (c.system == "square") return make_square_system();
    if (c.system == "simplex") return make_simplex_system(c.n);
    if (c.system == "hypercube") return make_hypercube_system(c.n);
    if (c.system == "modified")
        return make_modified_square(parse_rational(c.x), parse_rational(c.y));
    throw CLI::ValidationError("--system", "unknown system '" + c.system + "'");
}

JointSystem build_joint(const SystemChoice& c, const std::string& tensor,
                        const std::vector<int>& keep) {
    const SystemSpec sys = build_system(c);
    if (tensor == "min") return min_tensor(sys, sys);
    if (tensor == "max") return max_tensor(sys, sys);
    if (tensor == "custom") {
        if (c.system != "square")
            throw CLI::ValidationError("--tensor",
                                       "custom composites are defined for --system square");
        std::vector<RVec> kept;
        for (int k : keep) {
            if (k < 17 || k > 24)
                throw CLI::ValidationError("--keep", "entangled state indices are 17..24");
            kept.push_back(boxworld::joint_state(k));
        }
        JointSystem j = custom_tensor(sys, sys, kept);
        j.kept_indices = keep;
        return j;
    }
    throw CLI::ValidationError("--tensor", "expected min, max or custom");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write to '" + path + "'");
    out << text;
}

std::string vector_csv(const RVec& v) {
    std::string s;
    for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_fraction_string(v(i));
    for (Index i = 0; i < v.size(); ++i) s += "," + std::to_string(to_double(v(i)));
    return s;
}

nlohmann::json witness_json(const ChshWitness& w) {
    return {{"value", to_fraction_string(w.value)},
            {"value_approx", to_double(w.value)},
            {"state_index", w.state_index},
            {"alice_effects", w.alice_effects},
            {"bob_effects", w.bob_effects},
            {"minus_position", w.minus_position},
            {"global_sign", w.global_sign}};
}

Behavior read_behavior(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    nlohmann::json j;
    in >> j;
    return behavior_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact boxworld composites, CHSH surfaces and entanglement swapping"};
    app.require_subcommand(1);
    int exit_status = 0;

    SystemChoice choice;
    auto add_system_flags = [&](CLI::App* cmd) {
        cmd->add_option("--system", choice.system, "square | simplex | hypercube | modified")
            ->capture_default_str();
        cmd->add_option("--n", choice.n, "size parameter for simplex/hypercube")
            ->capture_default_str();
        cmd->add_option("--x", choice.x, "transition parameter x as p/q");
        cmd->add_option("--y", choice.y, "transition parameter y as p/q");
    };

    // ---- vertices ----------------------------------------------------------
    auto* vertices = app.add_subcommand("vertices", "enumerate extremal states and effects");
    add_system_flags(vertices);
    std::string tensor = "none";
    std::vector<int> keep = {17, 18, 19, 20};
    std::string format = "json";
    std::string output;
    vertices->add_option("--tensor", tensor, "none | min | max | custom")->capture_default_str();
    vertices->add_option("--keep", keep, "kept entangled state indices for --tensor custom")
        ->delimiter(',');
    vertices->add_option("--format", format, "json | csv")->capture_default_str();
    vertices->add_option("--output", output, "output path (stdout when omitted)");
    vertices->callback([&] {
        nlohmann::json j;
        std::ostringstream csv;
        if (tensor == "none") {
            const SystemSpec sys = build_system(choice);
            const auto effs = effect_extremals(sys);
            j = system_to_json(sys);
            nlohmann::json earr = nlohmann::json::array();
            for (const RVec& e : effs) earr.push_back(vector_to_json(e));
            j["effect_extremals"] = earr;
            j["counts"] = {{"states", sys.states.size()}, {"effect_extremals", effs.size()}};
            csv << "kind,index,coordinates...,decimal...\n";
            for (std::size_t i = 0; i < sys.states.size(); ++i)
                csv << "state," << i << "," << vector_csv(sys.states[i]) << "\n";
            for (std::size_t i = 0; i < effs.size(); ++i)
                csv << "effect," << i << "," << vector_csv(effs[i]) << "\n";
            std::cerr << sys.name << ": " << sys.states.size() << " extremal states, "
                      << effs.size() << " effect extremals\n";
        } else {
            const JointSystem joint = build_joint(choice, tensor, keep);
            j = joint_to_json(joint);
            j["counts"] = {{"joint_states", joint.joint_states.size()},
                           {"joint_effect_rays", joint.joint_effect_rays.size()}};
            csv << "kind,index,coordinates...,decimal...\n";
            for (std::size_t i = 0; i < joint.joint_states.size(); ++i)
                csv << "state," << i << "," << vector_csv(joint.joint_states[i]) << "\n";
            for (std::size_t i = 0; i < joint.joint_effect_rays.size(); ++i)
                csv << "effect_ray," << i << "," << vector_csv(joint.joint_effect_rays[i]) << "\n";
            std::cerr << to_string(joint.kind) << " composite: " << joint.joint_states.size()
                      << " joint states, " << joint.joint_effect_rays.size()
                      << " joint effect rays\n";
        }
        write_text(output, format == "csv" ? csv.str() : j.dump(2) + "\n");
    });

    // ---- chsh --------------------------------------------------------------
    auto* chsh = app.add_subcommand("chsh", "brute-force maximal CHSH value");
    std::string chsh_x, chsh_y;
    std::string chsh_tensor = "max";
    std::vector<int> chsh_keep = {17, 18, 19, 20};
    std::string chsh_system;
    std::string chsh_output;
    chsh->add_option("--x", chsh_x, "transition parameter x as p/q");
    chsh->add_option("--y", chsh_y, "transition parameter y as p/q");
    chsh->add_option("--system", chsh_system, "square (with --tensor) instead of --x/--y");
    chsh->add_option("--tensor", chsh_tensor, "min | max | custom")->capture_default_str();
    chsh->add_option("--keep", chsh_keep, "kept entangled indices for --tensor custom")
        ->delimiter(',');
    chsh->add_option("--output", chsh_output, "write the JSON report here");
    chsh->callback([&] {
        nlohmann::json report;
        bool headline = false;
        if (!chsh_x.empty() || !chsh_y.empty()) {
            const Rational x = parse_rational(chsh_x.empty() ? "0" : chsh_x);
            const Rational y = parse_rational(chsh_y.empty() ? "0" : chsh_y);
            const SystemSpec sys = make_modified_square(x, y);
            const auto witness = max_chsh(max_tensor(sys, sys));
            const Rational formula = chsh_formula(x, y);
            const bool match = witness.value == formula;
            report = {{"x", to_fraction_string(x)},
                      {"y", to_fraction_string(y)},
                      {"bruteforce", to_fraction_string(witness.value)},
                      {"formula", to_fraction_string(formula)},
                      {"match", match},
                      {"witness", witness_json(witness)}};
            std::cout << "bruteforce = " << to_short_string(witness.value) << " ("
                      << to_double(witness.value) << ")\n"
                      << "formula    = " << to_short_string(formula) << " (" << to_double(formula)
                      << ")\n"
                      << "match: " << (match ? "yes" : "NO") << "\n";
            headline = match;
        } else {
            SystemChoice sq_choice;
            sq_choice.system = chsh_system.empty() ? "square" : chsh_system;
            const JointSystem joint = build_joint(sq_choice, chsh_tensor, chsh_keep);
            const auto witness = max_chsh(joint);
            report = {{"system", sq_choice.system},
                      {"tensor", chsh_tensor},
                      {"bruteforce", to_fraction_string(witness.value)},
                      {"witness", witness_json(witness)}};
            std::cout << "bruteforce = " << to_short_string(witness.value) << " ("
                      << to_double(witness.value) << ")\n";
            headline = true;
        }
        const auto& w = report["witness"];
        std::cout << "witness: state " << w["state_index"] << ", alice effects ("
                  << w["alice_effects"][0] << "," << w["alice_effects"][1] << "), bob effects ("
                  << w["bob_effects"][0] << "," << w["bob_effects"][1] << ")\n";
        if (!chsh_output.empty()) write_text(chsh_output, report.dump(2) + "\n");
        if (!headline) exit_status = 1;
    });

    // ---- surface -----------------------------------------------------------
    auto* surface = app.add_subcommand("surface", "CHSH surface CSV over the i/N grid");
    int grid_n = 8;
    unsigned threads = 0;
    std::string surface_output;
    surface->add_option("--grid", grid_n, "grid resolution N (points x=i/N)")
        ->capture_default_str()
        ->check(CLI::Range(1, 64));
    surface->add_option("--threads", threads, "worker threads (0 = GPTBOX_THREADS or auto)");
    surface->add_option("--output", surface_output, "CSV path (stdout when omitted)");
    surface->callback([&] {
        const auto rows = chsh_surface(grid_n, threads);
        write_text(surface_output, surface_csv(rows));
        int mismatches = 0;
        for (const auto& r : rows)
            if (!r.match) ++mismatches;
        std::cerr << rows.size() << " grid points, " << mismatches << " mismatches\n";
        if (mismatches > 0) exit_status = 1;
    });

    // ---- swap --------------------------------------------------------------
    auto* swap = app.add_subcommand("swap", "entanglement swapping scan on the custom composite");
    bool scan_all = false;
    int swap_ab = 0, swap_cd = 0, swap_effect = 0;
    std::string swap_output;
    swap->add_flag("--scan", scan_all, "scan all 4x4x4 combinations (default)");
    swap->add_option("--ab", swap_ab, "AB state index (17..20) for a single row");
    swap->add_option("--cd", swap_cd, "CD state index (17..20)");
    swap->add_option("--effect", swap_effect, "BD effect index (17..20)");
    swap->add_option("--output", swap_output, "CSV path (stdout when omitted)");
    swap->callback([&] {
        auto rows = swap_scan();
        if (swap_ab || swap_cd || swap_effect) {
            std::vector<SwapScanRow> filtered;
            for (const auto& r : rows)
                if ((!swap_ab || r.state_ab == swap_ab) && (!swap_cd || r.state_cd == swap_cd) &&
                    (!swap_effect || r.effect_bd == swap_effect))
                    filtered.push_back(r);
            rows = std::move(filtered);
        }
        write_text(swap_output, swap_scan_csv(rows));
        int outside = 0;
        for (const auto& r : rows)
            if (r.in_custom && !*r.in_custom) ++outside;
        std::cerr << rows.size() << " rows, " << outside
                  << " posteriors outside the custom composite\n"
                  << "swap obstruction found: " << (outside > 0 ? "yes" : "no") << "\n";
        if (outside == 0) exit_status = 1;
    });

    // ---- selfdual ----------------------------------------------------------
    auto* selfdual = app.add_subcommand("selfdual", "weak self-duality certificate search");
    add_system_flags(selfdual);
    std::string sd_tensor = "none";
    std::vector<int> sd_keep = {17, 18, 19, 20};
    std::string sd_output;
    selfdual->add_option("--tensor", sd_tensor, "none | min | max | custom")
        ->capture_default_str();
    selfdual->add_option("--keep", sd_keep, "kept entangled indices for --tensor custom")
        ->delimiter(',');
    selfdual->add_option("--output", sd_output, "write the JSON report here");
    selfdual->callback([&] {
        Cone cone;
        if (sd_tensor == "none") {
            cone = state_cone(build_system(choice));
        } else {
            const JointSystem joint = build_joint(choice, sd_tensor, sd_keep);
            cone = make_cone(joint.joint_states, joint.dim());
        }
        const auto rep = weak_self_duality_report(cone);
        nlohmann::json j = {{"rays", rep.rays.size()},
                            {"dual_rays", rep.dual_rays.size()},
                            {"ray_counts_match", rep.ray_counts_match},
                            {"search_exhausted", rep.search_exhausted},
                            {"certificate", nullptr}};
        std::cout << "state cone rays: " << rep.rays.size()
                  << ", dual cone rays: " << rep.dual_rays.size() << "\n";
        if (rep.certificate) {
            const auto& cert = *rep.certificate;
            nlohmann::json rows = nlohmann::json::array();
            for (Index r = 0; r < cert.map.rows(); ++r)
                rows.push_back(vector_to_json(RVec(cert.map.row(r).transpose())));
            nlohmann::json scales = nlohmann::json::array();
            for (const Rational& s : cert.scales) scales.push_back(to_fraction_string(s));
            j["certificate"] = {{"map_rows", rows}, {"pairing", cert.pairing}, {"scales", scales}};
            std::cout << "certificate found; map rows:\n";
            for (Index r = 0; r < cert.map.rows(); ++r) {
                std::cout << " ";
                for (Index c = 0; c < cert.map.cols(); ++c)
                    std::cout << " " << to_short_string(cert.map(r, c));
                std::cout << "\n";
            }
        } else {
            std::cout << "no certificate"
                      << (rep.ray_counts_match ? " within the search bounds"
                                               : " (ray counts differ)")
                      << "\n";
        }
        if (!sd_output.empty()) write_text(sd_output, j.dump(2) + "\n");
        if (!rep.certificate) exit_status = 1;
    });

    // ---- behavior ----------------------------------------------------------
    auto* behavior = app.add_subcommand(
        "behavior", "behavior of a two-square joint state under fiducial measurements");
    int beh_state = 17;
    std::vector<int> meas_a = {3, 2}, meas_b = {3, 2};
    std::string beh_output;
    behavior->add_option("--state", beh_state, "conventional joint state index 1..24")
        ->capture_default_str();
    behavior->add_option("--meas-a", meas_a, "Alice's effect indices (1..4) for x=0,1")
        ->delimiter(',')
        ->expected(1, 2);
    behavior->add_option("--meas-b", meas_b, "Bob's effect indices (1..4) for y=0,1")
        ->delimiter(',')
        ->expected(1, 2);
    behavior->add_option("--output", beh_output, "write the behavior JSON here");
    behavior->callback([&] {
        if (beh_state < 1 || beh_state > 24)
            throw CLI::ValidationError("--state", "conventional index must be 1..24");
        for (const auto& m : {meas_a, meas_b})
            for (int k : m)
                if (k < 1 || k > 4)
                    throw CLI::ValidationError("--meas-a/--meas-b", "effect indices are 1..4");
        const SystemSpec sq = make_square_system();
        const auto effs = boxworld::square_effects();
        auto meas = [&](int k) {
            return binary_measurement(effs[static_cast<std::size_t>(k - 1)], sq);
        };
        const Behavior b = behavior_from(boxworld::joint_state(beh_state),
                                         {meas(meas_a[0]), meas(meas_a[1])},
                                         {meas(meas_b[0]), meas(meas_b[1])});
        const auto ns = check_no_signalling(b);
        const auto chsh_res = chsh_value(b);
        const auto pr = is_pr_box(b);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                std::cout << "p(ab|" << x << y << "):";
                for (int a = 0; a < 2; ++a)
                    for (int bb = 0; bb < 2; ++bb)
                        std::cout << " " << to_short_string(b.at(x, y, a, bb));
                std::cout << "\n";
            }
        std::cout << "no-signalling: " << (ns.holds ? "yes" : "NO (" + ns.violation + ")") << "\n"
                  << "chsh value: " << to_short_string(chsh_res.value) << "\n"
                  << "pr box: "
                  << (pr.is_pr ? "yes (variant " + std::to_string(pr.alpha) +
                                     std::to_string(pr.beta) + std::to_string(pr.gamma) + ")"
                               : "no")
                  << "\n";
        nlohmann::json j = behavior_to_json(b);
        j["no_signalling"] = ns.holds;
        j["chsh"] = to_fraction_string(chsh_res.value);
        j["pr_box"] = pr.is_pr;
        if (!beh_output.empty()) write_text(beh_output, j.dump(2) + "\n");
        if (!ns.holds) exit_status = 1;
    });

    // ---- checks ------------------------------------------------------------
    auto* check_ns = app.add_subcommand("check-nosignalling",
                                        "no-signalling check of a behavior JSON file");
    std::string ns_input;
    check_ns->add_option("--input", ns_input, "behavior JSON path")->required();
    check_ns->callback([&] {
        const auto res = check_no_signalling(read_behavior(ns_input));
        std::cout << "no-signalling: " << (res.holds ? "yes" : "NO (" + res.violation + ")")
                  << "\n";
        if (!res.holds) exit_status = 1;
    });

    auto* check_loc = app.add_subcommand("check-local",
                                         "CHSH locality check of a behavior JSON file");
    std::string loc_input;
    check_loc->add_option("--input", loc_input, "behavior JSON path")->required();
    check_loc->callback([&] {
        const Behavior b = read_behavior(loc_input);
        if (!check_no_signalling(b).holds) {
            std::cout << "behavior is signalling; locality test requires no-signalling\n";
            exit_status = 2;
            return;
        }
        const auto res = chsh_value(b);
        std::cout << "chsh value: " << to_short_string(res.value) << "\n"
                  << "local: " << (res.value <= 2 ? "yes" : "no") << "\n";
        if (res.value > 2) exit_status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_status;
}
