#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qlattice/problem.hpp"

namespace qlattice {

inline nlohmann::json problem_to_json(const Problem& p) {
    nlohmann::json j;
    j["kind"] = to_string(p.kind);
    j["N"] = p.item_count;
    j["L"] = p.solution_level;
    j["K"] = p.start_level;
    j["seed"] = p.seed;
    auto nogoods = nlohmann::json::array();
    for (ItemSet g : p.nogoods) nogoods.push_back(g.items());
    j["nogoods"] = std::move(nogoods);
    if (p.kind == ProblemKind::sat3) {
        j["vars"] = p.var_count;
        j["clauses"] = p.clause_count;
    }
    return j;
}

inline Problem problem_from_json(const nlohmann::json& j) {
    Problem p;
    p.kind = problem_kind_from_string(j.at("kind").get<std::string>());
    p.item_count = j.at("N").get<int>();
    p.solution_level = j.at("L").get<int>();
    p.start_level = j.at("K").get<int>();
    p.seed = j.value("seed", std::uint64_t{0});
    for (const auto& entry : j.at("nogoods")) {
        ItemSet g;
        for (const auto& item : entry) g = g.with(item.get<int>());
        p.nogoods.push_back(g);
    }
    if (p.kind == ProblemKind::sat3) {
        p.var_count = j.at("vars").get<int>();
        p.clause_count = j.value("clauses", 0);
    }
    validate_problem(p);
    return p;
}

inline void save_problem(const Problem& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << problem_to_json(p).dump(2) << "\n";
}

inline Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return problem_from_json(j);
}

} // namespace qlattice
