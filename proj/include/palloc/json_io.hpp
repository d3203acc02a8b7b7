#pragma once

#include <string>

#include <json.hpp>

#include "palloc/mesh.hpp"
#include "palloc/ptas.hpp"
#include "palloc/types.hpp"

namespace palloc {

/// Multisets serialize as arrays of coordinate arrays: [[0,0],[1,2]].
nlohmann::json to_json(const PointMultiset& s);
PointMultiset multiset_from_json(const nlohmann::json& j);
PointMultiset multiset_from_string(const std::string& text);

/// Meshes serialize as {"extents":[w,h,...],"occupied":[[x,y],...]}.
nlohmann::json to_json(const Mesh& mesh);
Mesh mesh_from_json(const nlohmann::json& j);
Mesh mesh_from_string(const std::string& text);

/// Allocations carry points, the exact total, the mean pairwise distance as
/// a decimal string, and any center / sigma metadata.
nlohmann::json to_json(const Allocation& alloc);

nlohmann::json to_json(const PtasResult& result);

}  // namespace palloc
