#pragma once

#include <optional>
#include <string>

#include "contracts/commlab.hpp"
#include "contracts/oracle.hpp"
#include "json.hpp"

namespace contracts::io {

using nlohmann::ordered_json;

inline constexpr const char* kInstanceFormat = "contracts-instance/1";

// Reals travel as exact dyadic strings ("mantissa p exponent") with a
// decimal rendering alongside for readers.
ordered_json real_json(const Real& r);
Real real_from_json(const ordered_json& j);
ordered_json reals_json(const std::vector<Real>& v);

ordered_json set_function_json(const SetFunction& v);
SetFunction set_function_from_json(const ordered_json& j, int n);

// Extra recipe carried by augmented instances so the base can be rebuilt.
struct CCRecipe {
  CCVariant variant = CCVariant::SubSub;
  std::string x_f;
  std::string x_c;
  int precision_bits = kExtendedPrecision;  // of the shared base
};

ordered_json instance_json(const ContractInstance& inst, const std::optional<CCRecipe>& cc = std::nullopt);
ContractInstance instance_from_json(const ordered_json& j);
std::optional<CCRecipe> cc_recipe_from_json(const ordered_json& j);

// Inline JSON when the text starts with '{', otherwise a file path.
ordered_json load_json(const std::string& spec);

SpecialSetVector special_set_vector_from_string(int n, const std::string& bits);

// Writes to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace contracts::io
