/**
 * JSON serialization of systems, composites and behaviors. Every scalar is
 * rendered as an exact "p/q" string so round trips are bit-exact.
 */

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "gptbox/behavior.hpp"
#include "gptbox/tensor.hpp"

namespace gptbox {

inline nlohmann::json vector_to_json(const RVec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(to_fraction_string(v(i)));
    return arr;
}

inline RVec vector_from_json(const nlohmann::json& arr) {
    RVec v(static_cast<Index>(arr.size()));
    Index i = 0;
    for (const auto& e : arr) v(i++) = parse_rational(e.get<std::string>());
    return v;
}

inline nlohmann::json system_to_json(const SystemSpec& sys) {
    nlohmann::json j;
    j["name"] = sys.name;
    j["dim"] = sys.dim;
    if (sys.params)
        j["params"] = {{"x", to_fraction_string(sys.params->first)},
                       {"y", to_fraction_string(sys.params->second)}};
    else
        j["params"] = nullptr;
    j["unit"] = vector_to_json(sys.unit);
    nlohmann::json states = nlohmann::json::array();
    for (const RVec& w : sys.states) states.push_back(vector_to_json(w));
    j["states"] = states;
    return j;
}

inline SystemSpec system_from_json(const nlohmann::json& j) {
    SystemSpec sys;
    sys.name = j.at("name").get<std::string>();
    sys.dim = j.at("dim").get<Index>();
    if (!j.at("params").is_null())
        sys.params = std::make_pair(parse_rational(j["params"].at("x").get<std::string>()),
                                    parse_rational(j["params"].at("y").get<std::string>()));
    sys.unit = vector_from_json(j.at("unit"));
    for (const auto& w : j.at("states")) sys.states.push_back(vector_from_json(w));
    return sys;
}

inline nlohmann::json joint_to_json(const JointSystem& joint) {
    nlohmann::json j;
    j["kind"] = to_string(joint.kind);
    j["party_a"] = system_to_json(joint.party_a);
    j["party_b"] = system_to_json(joint.party_b);
    j["kept_indices"] = joint.kept_indices;
    j["unit"] = vector_to_json(joint.unit);
    nlohmann::json states = nlohmann::json::array();
    for (const RVec& w : joint.joint_states) states.push_back(vector_to_json(w));
    j["joint_states"] = states;
    nlohmann::json rays = nlohmann::json::array();
    for (const RVec& f : joint.joint_effect_rays) rays.push_back(vector_to_json(f));
    j["joint_effect_rays"] = rays;
    return j;
}

inline JointSystem joint_from_json(const nlohmann::json& j) {
    JointSystem joint;
    const std::string kind = j.at("kind").get<std::string>();
    joint.kind = kind == "minimal"   ? JointKind::minimal
                 : kind == "maximal" ? JointKind::maximal
                                     : JointKind::custom;
    joint.party_a = system_from_json(j.at("party_a"));
    joint.party_b = system_from_json(j.at("party_b"));
    joint.kept_indices = j.at("kept_indices").get<std::vector<int>>();
    joint.unit = vector_from_json(j.at("unit"));
    for (const auto& w : j.at("joint_states")) joint.joint_states.push_back(vector_from_json(w));
    for (const auto& f : j.at("joint_effect_rays"))
        joint.joint_effect_rays.push_back(vector_from_json(f));
    return joint;
}

/// Behavior as {"p": {"xy": [[p00, p01], [p10, p11]], ...}} with rows indexed by a.
inline nlohmann::json behavior_to_json(const Behavior& beh) {
    nlohmann::json p;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            nlohmann::json table = nlohmann::json::array();
            for (int a = 0; a < 2; ++a) {
                nlohmann::json row = nlohmann::json::array();
                for (int b = 0; b < 2; ++b) row.push_back(to_fraction_string(beh.at(x, y, a, b)));
                table.push_back(row);
            }
            p[std::to_string(x) + std::to_string(y)] = table;
        }
    return nlohmann::json{{"p", p}};
}

inline Behavior behavior_from_json(const nlohmann::json& j) {
    Behavior beh;
    const auto& p = j.at("p");
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const auto& table = p.at(std::to_string(x) + std::to_string(y));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    beh.at(x, y, a, b) = parse_rational(
                        table.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b))
                            .get<std::string>());
        }
    return beh;
}

}  // namespace gptbox
