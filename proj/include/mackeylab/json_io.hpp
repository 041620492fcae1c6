#pragma once

// JSON forms of the input and output types. Integers that do not fit in 64
// bits are written as decimal strings; both forms are accepted on input.

#include <filesystem>
#include <json.hpp>

#include "mackeylab/catmod.hpp"
#include "mackeylab/mackey_system.hpp"
#include "mackeylab/span.hpp"
#include "mackeylab/tower.hpp"

namespace mackeylab {

using Json = nlohmann::json;

/// Parses a file; InputError("BadJson") on I/O or syntax errors.
Json load_json(const std::filesystem::path& path);

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
/// Row-major list of rows. An empty list is a 0 x cols matrix.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t cols = 0);
Json abelian_to_json(const AbelianGroup& a);
AbelianGroup abelian_from_json(const Json& j);

/// {"degree", "generators", "name"}
Json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const Json& j);
/// A group reference: inline object, catalogue name ("s3"), or a file path relative to `base`.
GroupPtr resolve_group(const Json& ref, const std::filesystem::path& base = {});

/// {"family": "all" | [ids], "opens": "full" | {id: [ids]}}
Json system_to_json(const MackeySystem& s);
MackeySystem system_from_json(GroupPtr g, const Json& j);
Json violation_to_json(const Violation& v);

/// {"type": "homogeneous", "subgroup": id} or {"type": "disjoint_union", "parts": [...]}
Json gset_to_json(const GSet& x);
GSet gset_from_json(GroupPtr g, const Json& j);

/// {"values": {label: {"rank", "relations"}}, "actions": {morphism id: matrix}}
Json module_to_json(const CatModule& m);
ModulePtr module_from_json(const CatPtr& cat, const Json& j);

Json span_to_json(const MackeyCategory& m, const BasicSpan& s);

/// {"levels": [group refs], "projections": [[generator images], ...]}
TowerPtr tower_from_json(const Json& j, const std::filesystem::path& base = {});
Json tower_to_json(const Tower& t);
/// {"groups": [ids]}
ClosedThread thread_from_json(const Json& j);
Json thread_to_json(const ClosedThread& k);

}  // namespace mackeylab
