#pragma once

#include <json.hpp>

#include "spheq/energetics.hpp"
#include "spheq/equilibrium.hpp"
#include "spheq/particle_flow.hpp"

namespace spheq {

inline constexpr const char* kSchemaVersion = "1";

inline nlohmann::json to_json(const EquilibriumSolution& sol) {
    return {{"schema_version", kSchemaVersion},
            {"n", sol.params.n},
            {"alpha", sol.params.alpha},
            {"t", sol.t},
            {"a", sol.a},
            {"b", sol.b},
            {"c_alpha", sol.c_alpha},
            {"residual", sol.residual}};
}

inline EquilibriumSolution solution_from_json(const nlohmann::json& j) {
    EquilibriumSolution sol;
    sol.params.n = j.at("n").get<int>();
    sol.params.alpha = j.at("alpha").get<double>();
    sol.t = j.at("t").get<double>();
    sol.a = j.at("a").get<double>();
    sol.b = j.at("b").get<double>();
    sol.c_alpha = j.at("c_alpha").get<double>();
    sol.residual = j.value("residual", 0.0);
    return sol;
}

inline nlohmann::json to_json(const ELReport& rep) {
    return {{"schema_version", kSchemaVersion},
            {"n", rep.params.n},
            {"alpha", rep.params.alpha},
            {"c_alpha", rep.c_alpha},
            {"interior_max_abs_dev", rep.interior_max_abs_dev},
            {"interior_max_rel_dev", rep.interior_max_rel_dev},
            {"interior_constant_avg", rep.interior_constant_avg},
            {"exterior_min_slack", rep.exterior_min_slack},
            {"derivative_min", rep.derivative_min},
            {"grids",
             {{"interior_points", rep.interior_points},
              {"z_points", rep.z_points},
              {"z_max", rep.z_max}}}};
}

inline nlohmann::json to_json(const ShapeFit& fit) {
    return {{"t_hat", fit.t_hat},
            {"b_hat", fit.b_hat},
            {"residual", fit.residual},
            {"center", std::vector<double>(fit.center.data(), fit.center.data() + fit.center.size())}};
}

}  // namespace spheq
