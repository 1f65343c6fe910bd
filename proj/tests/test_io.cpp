#include "doctest.h"

#include <random>

#include "contracts/constructions.hpp"
#include "contracts/experiments.hpp"
#include "instance_io.hpp"

using namespace contracts;

TEST_CASE("instances round-trip through JSON exactly") {
  std::mt19937_64 rng(83);
  std::vector<ContractInstance> insts{build_equal_revenue_submod_f(4), build_equal_revenue_supmod_c(4),
                                      build_equal_revenue_submod_f(3, 256), random_monotone_instance(3, rng)};
  for (const ContractInstance& inst : insts) {
    auto j = io::instance_json(inst);
    ContractInstance back = io::instance_from_json(io::ordered_json::parse(j.dump()));
    CHECK(back.n == inst.n);
    CHECK(back.precision_bits == inst.precision_bits);
    for (Mask t = 0; t < inst.f.size(); ++t) {
      CHECK(back.f(t) == inst.f(t));
      CHECK(back.c(t) == inst.c(t));
    }
    CHECK(back.f.declared_class() == inst.f.declared_class());
  }
}

TEST_CASE("recipes and malformed input") {
  io::CCRecipe r{CCVariant::SupSup, "010010", "100001", 256};
  auto j = io::instance_json(build_equal_revenue_submod_f(2), r);
  auto back = io::cc_recipe_from_json(j);
  REQUIRE(back);
  CHECK(back->variant == CCVariant::SupSup);
  CHECK(back->x_f == "010010");
  CHECK_FALSE(io::cc_recipe_from_json(io::instance_json(build_equal_revenue_submod_f(2))));
  CHECK_THROWS_AS(io::load_json("{not json"), ParameterError);
  CHECK_THROWS_AS(io::load_json("/nonexistent/file.json"), ParameterError);
  auto bad = io::instance_json(build_equal_revenue_submod_f(2));
  bad["f"]["values"].erase(0);
  CHECK_THROWS_AS(io::instance_from_json(bad), ParameterError);
  CHECK_THROWS_AS(io::special_set_vector_from_string(4, "01x010"), ParameterError);
  CHECK(io::real_from_json(io::ordered_json(0.5)) == Real(0.5));
  CHECK(io::real_from_json(io::ordered_json("3p-2")) == Real(0.75));
}
