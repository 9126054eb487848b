#pragma once

// JSON descriptors for closed subgroups of R, C and H.
//
//   R: {"trivial": true} | {"cyclic": step} | {"full": true} | {"param": p}
//   C: {"stratum": "zero" | "full"}
//      {"stratum": "cyclic", "omega": [re, im]}
//      {"stratum": "line", "u": [re, im]}
//      {"stratum": "line-cyclic", "u": [re, im], "v": [re, im]}
//      {"stratum": "lattice", "z": [re, im], "zp": [re, im]}
//      {"gens": [[x, y], ...]}            exact strings only
//   H: {"kind": "heis-lattice", "z", "zp", "t", "tp", "n"}
//      {"kind": "trivial" | "full"}
//      {"kind": "central", "sub": R}
//      {"kind": "planar", "u": [re, im], "sub": C}
//      {"kind": "pullback", "base": C}
//      {"kind": "heis-gens", "gens": [[x, y, t], ...]}  exact strings only
//
// Numbers are JSON numbers or strings ("3/4", "sqrt(2)/2"). Exact data is
// written back as "p/q" strings.

#include <memory>
#include <string>
#include <variant>

#include <json.hpp>

#include "chabauty/heisenberg.hpp"
#include "chabauty/subgroups.hpp"

namespace chabauty {

using json = nlohmann::json;

enum class Space { R, C, H };
Space parse_space(const std::string& s);
std::string space_name(Space s);

/// Inline JSON, or the path of a file holding it. Throws ParseError.
json load_json_argument(const std::string& text);

double parse_real(const json& j);
Complex parse_complex(const json& j);
json complex_to_json(Complex z);

ClosedSubgroupR parse_subgroup_r(const json& j);
json to_json(const ClosedSubgroupR& c);

ClosedSubgroupC parse_subgroup_c(const json& j);
json to_json(const ClosedSubgroupC& c);

HeisLattice parse_heis_lattice(const json& j);
json to_json(const HeisLattice& lat);
HeisSubgroup parse_heis(const json& j);
json to_json(const HeisSubgroup& s);

using AnySubgroup = std::variant<ClosedSubgroupR, ClosedSubgroupC, HeisSubgroup>;
AnySubgroup parse_descriptor(Space space, const json& j);
json to_json(const AnySubgroup& s);
std::shared_ptr<const SetView> view_of(const AnySubgroup& s);

}  // namespace chabauty
