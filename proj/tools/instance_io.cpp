#include "instance_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "contracts/errors.hpp"

namespace contracts::io {

ordered_json real_json(const Real& r) { return r.exact(); }

Real real_from_json(const ordered_json& j) {
  if (j.is_number()) return Real(j.get<double>());
  if (!j.is_string()) throw ParameterError("expected a number or numeric string, got " + j.dump());
  return Real::parse_exact(j.get<std::string>());
}

ordered_json reals_json(const std::vector<Real>& v) {
  ordered_json a = ordered_json::array();
  for (const Real& r : v) a.push_back(real_json(r));
  return a;
}

namespace {

ordered_json approx_json(const std::vector<Real>& v) {
  ordered_json a = ordered_json::array();
  for (const Real& r : v) a.push_back(r.to_double());
  return a;
}

std::vector<Real> reals_from_json(const ordered_json& j) {
  if (!j.is_array()) throw ParameterError("expected an array of numbers");
  std::vector<Real> out;
  for (const auto& x : j) out.push_back(real_from_json(x));
  return out;
}

}  // namespace

ordered_json set_function_json(const SetFunction& v) {
  ordered_json j;
  j["class"] = to_string(v.declared_class());
  if (v.additive_weights()) j["weights"] = reals_json(*v.additive_weights());
  auto values = v.values();
  j["values"] = reals_json(values);
  j["approx"] = approx_json(values);
  return j;
}

SetFunction set_function_from_json(const ordered_json& j, int n) {
  if (!j.is_object()) throw ParameterError("set function must be an object");
  const StructureClass cls =
      structure_class_from_string(j.value("class", std::string("general-monotone")));
  if (j.contains("weights") && !j.contains("values")) {
    auto w = reals_from_json(j.at("weights"));
    if (static_cast<int>(w.size()) != n) throw ParameterError("weights length differs from n");
    return SetFunction::additive(w);
  }
  if (!j.contains("values")) throw ParameterError("set function needs values or weights");
  auto values = reals_from_json(j.at("values"));
  if (values.size() != universe_size(n)) {
    throw ParameterError("table holds " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(universe_size(n)));
  }
  if (j.contains("weights")) {
    auto w = reals_from_json(j.at("weights"));
    SetFunction add = SetFunction::additive(w);
    for (Mask t = 0; t < values.size(); ++t) {
      if (!(add(t) == values[t])) throw ParameterError("weights disagree with the value table at " + std::to_string(t));
    }
    return add;
  }
  return SetFunction(n, std::move(values), cls);
}

ordered_json instance_json(const ContractInstance& inst, const std::optional<CCRecipe>& cc) {
  ordered_json j;
  j["format"] = kInstanceFormat;
  j["name"] = inst.name;
  j["n"] = inst.n;
  j["precision_bits"] = inst.precision_bits;
  j["tie_break"] = "higher-f-then-lower-index";
  j["f"] = set_function_json(inst.f);
  j["c"] = set_function_json(inst.c);
  if (cc) {
    j["cc"] = {{"variant", to_string(cc->variant)}, {"x_f", cc->x_f}, {"x_c", cc->x_c}, {"base_precision_bits", cc->precision_bits}};
  }
  return j;
}

ContractInstance instance_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ParameterError("instance must be a JSON object");
  if (j.contains("format") && j.at("format") != kInstanceFormat) {
    throw ParameterError("unsupported instance format " + j.at("format").dump());
  }
  const int n = j.at("n").get<int>();
  check_ground_size(n);
  const int prec = j.value("precision_bits", kDefaultPrecision);
  PrecisionGuard guard(std::max(working_precision(), prec));
  ContractInstance inst(set_function_from_json(j.at("f"), n), set_function_from_json(j.at("c"), n), prec,
                        j.value("name", std::string()));
  inst.check_basic();
  return inst;
}

std::optional<CCRecipe> cc_recipe_from_json(const ordered_json& j) {
  if (!j.contains("cc")) return std::nullopt;
  const auto& cc = j.at("cc");
  return CCRecipe{cc_variant_from_string(cc.at("variant").get<std::string>()),
                  cc.at("x_f").get<std::string>(), cc.at("x_c").get<std::string>(),
                  cc.value("base_precision_bits", kExtendedPrecision)};
}

ordered_json load_json(const std::string& spec) {
  std::size_t first = spec.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && spec[first] == '{') return ordered_json::parse(spec);
    std::ifstream in(spec);
    if (!in) throw ParameterError("cannot open " + spec);
    return ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw ParameterError(std::string("malformed JSON: ") + e.what());
  }
}

SpecialSetVector special_set_vector_from_string(int n, const std::string& bits) {
  std::vector<bool> v;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ParameterError("special-set vector must be a 0/1 string: " + bits);
    v.push_back(ch == '1');
  }
  return SpecialSetVector::from_bits(n, std::move(v));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

}  // namespace contracts::io
