#pragma once

#include <nlohmann/json.hpp>

#include "hclust/algorithms.hpp"
#include "hclust/census.hpp"
#include "hclust/objectives.hpp"
#include "hclust/ultrametric.hpp"

namespace hclust {

inline nlohmann::json to_json(const CostReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& v : r.per_vertex)
        per.push_back({{"leaves_left", v.leaves_left},
                       {"leaves_right", v.leaves_right},
                       {"value", v.value}});
    return {{"total", r.total}, {"per_vertex", per}};
}

inline nlohmann::json to_json(const MergeTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"left", s.left}, {"right", s.right}, {"value", s.value}});
    return steps;
}

inline nlohmann::json to_json(const VertexCensus& c) {
    return {{"r1", c.r1}, {"r2_tm", c.r2_tm}, {"r2_om", c.r2_om}, {"r2_nm", c.r2_nm}};
}

inline nlohmann::json to_json(const UltrametricWitness& w,
                              const DissimilarityMatrix& d) {
    if (w.ok)
        return {{"ultrametric", true}};
    return {{"ultrametric", false},
            {"witness",
             {{"labels",
               {d.label(w.triple[0]), d.label(w.triple[1]), d.label(w.triple[2])}},
              {"values", {w.values[0], w.values[1], w.values[2]}}}}};
}

} // namespace hclust
