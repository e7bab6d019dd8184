#include <cmath>

#include "doctest.h"
#include "persuasion/io.hpp"

using namespace persuasion;

namespace {

std::string message_of(const std::string& text,
                       Instance (*parse)(const std::string&)) {
  try {
    parse(text);
  } catch (const InstanceError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_instance") {
  const Instance inst = parse_instance(R"({"prior":[0.2,0.3,0.5],"utility":[-2,-2,1]})");
  CHECK(inst.prior.size() == 3);
  CHECK(inst.utility[2] == 1.0);

  CHECK(message_of(R"({"prior":[0,1],"utility":[1,1]})", parse_instance) ==
        "prior: prior entry must be positive");
  CHECK(message_of(R"({"prior":[0.5,0.6],"utility":[1,1]})", parse_instance)
            .rfind("prior:", 0) == 0);
  CHECK(message_of(R"({"prior":[0.5,0.5]})", parse_instance) == "utility: missing");
  CHECK(message_of(R"({"prior":[0.5,0.5],"utility":[1]})", parse_instance)
            .rfind("utility:", 0) == 0);
  CHECK(message_of(R"({"prior":[0.5,0.5],"utility":[1,"a"]})", parse_instance) ==
        "utility: entries must be numbers");
  CHECK(message_of(R"({"prior":[0.5,0.5],"utility":[1,1e999]})", parse_instance)
            .rfind("malformed JSON", 0) == 0);
  CHECK(message_of(R"({"prior":[0.5,0.5],"utility":[1,NaN]})", parse_instance)
            .rfind("malformed JSON", 0) == 0);
  CHECK(message_of("[1,2]", parse_instance) == "top level must be an object");
}

TEST_CASE("parse_scheme") {
  const FiniteScheme s = parse_scheme(
      R"({"atoms":[{"posterior":[1,0],"weight":0.25},{"posterior":[0.2,0.8],"weight":0.75}]})");
  CHECK(s.size() == 2);
  CHECK(s.atoms()[1].posterior[1] == 0.8);
  CHECK_THROWS_AS(parse_scheme(R"({"atoms":[{"posterior":[1,0]}]})"), InstanceError);
  CHECK_THROWS_AS(parse_scheme(R"({"atoms":[{"posterior":[1,0],"weight":0.5}]})"),
                  InstanceError);
}

TEST_CASE("parse_grid_instance") {
  const GridInstance g = parse_grid_instance(
      R"({"dims":[2,2],"marginals":[[0.5,0.5],[0.25,0.75]],"utility":[0,1,1,2]})");
  CHECK(g.is_product());
  CHECK(g.prior()[3] == doctest::Approx(0.375));
  const GridInstance j = parse_grid_instance(
      R"({"dims":[2],"joint":[0.4,0.6],"utility":[0,1]})");
  CHECK_FALSE(j.is_product());
  CHECK_THROWS_AS(parse_grid_instance(R"({"dims":[2],"utility":[0,1]})"), InstanceError);
  CHECK_THROWS_AS(
      parse_grid_instance(R"({"dims":[2],"joint":[0.4,0.6],"marginals":[[0.4,0.6]],"utility":[0,1]})"),
      InstanceError);
  CHECK_THROWS_AS(parse_grid_instance(R"({"dims":[0],"joint":[],"utility":[]})"),
                  InstanceError);
  CHECK_THROWS_AS(parse_grid_instance(R"({"dims":[2],"joint":[0.4,0.6],"utility":[0]})"),
                  InstanceError);
}
