#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <nlohmann/json.hpp>

#include "chebtree/extension.hpp"
#include "chebtree/serialize.hpp"
#include "test_util.hpp"

using namespace chebtree;

namespace {

Box square() { return Box({Interval(-1, 1), Interval(-1, 1)}); }

BuildParams quick_params(std::size_t n = 17, double tol = 1e-10) {
  BuildParams p;
  p.samples_per_dim = n;
  p.tol = tol;
  return p;
}

}  // namespace

TEST_CASE("round trip is bit-exact on values and structure") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(10.0 * (x[0] + x[1] * x[1])); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-10));
  REQUIRE(fun.leaf_count() > 1);

  const std::string text = to_json(fun);
  const PUFun back = from_json(text);

  REQUIRE(back.leaf_count() == fun.leaf_count());
  CHECK(back.omega() == fun.omega());
  CHECK(back.params().samples_per_dim == fun.params().samples_per_dim);
  CHECK(back.params().overlap == fun.params().overlap);
  CHECK(back.params().tol == fun.params().tol);

  const auto la = fun.leaves();
  const auto lb = back.leaves();
  for (std::size_t i = 0; i < la.size(); ++i) {
    CHECK(la[i]->zone == lb[i]->zone);
    CHECK(la[i]->domain == lb[i]->domain);
    CHECK(la[i]->isdone == lb[i]->isdone);
    const TensorLeaf* ta = la[i]->tensor();
    const TensorLeaf* tb = lb[i]->tensor();
    REQUIRE(ta);
    REQUIRE(tb);
    REQUIRE(ta->values.size() == tb->values.size());
    for (std::size_t k = 0; k < ta->values.size(); ++k)
      CHECK(ta->values[k] == tb->values[k]);  // bitwise
  }

  // serializing the reloaded object reproduces the document byte for byte
  CHECK(to_json(back) == text);

  auto gen = testutil::rng(179);
  for (int t = 0; t < 200; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(back.eval(x) - fun.eval(x)) <= 1e-14);
  }
}

TEST_CASE("document schema carries the advertised fields") {
  const Box omega = square();
  const PUFun fun = build([](std::span<const double> x) { return x[0]; }, omega,
                          quick_params(17, 1e-12));
  const auto doc = nlohmann::json::parse(to_json(fun));
  REQUIRE(doc.contains("omega"));
  REQUIRE(doc.contains("params"));
  REQUIRE(doc.contains("nodes"));
  REQUIRE(doc["nodes"].is_array());
  const auto& node = doc["nodes"][0];
  for (const char* key : {"zone", "domain", "isdone", "splitdim", "payload", "children"})
    CHECK(node.contains(key));
  CHECK(node["splitdim"].is_null());
  CHECK(node["children"].is_null());
  REQUIRE(node["payload"].is_object());
  CHECK(node["payload"].contains("degrees"));
  CHECK(node["payload"]["values"].is_string());
}

TEST_CASE("degree-zero payloads survive the round trip") {
  const Box omega = square();
  const PUFun fun = build([](std::span<const double>) { return 7.5; }, omega,
                          quick_params(17, 1e-12));
  const PUFun back = from_json(to_json(fun));
  CHECK(back.stored_points() == 1);
  CHECK(back.eval(std::vector<double>{0.2, 0.4}) == doctest::Approx(7.5).epsilon(1e-13));
}

TEST_CASE("extension approximants refuse to serialize") {
  const DomainSpec disk = disk_domain();
  const PUFun fun = build_extension(
      [](std::span<const double> x) { return x[0] + x[1]; }, disk, quick_params(17, 1e-10));
  CHECK_THROWS_AS(to_json(fun), InvalidArgumentError);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS(from_json("{"));
  CHECK_THROWS(from_json("{}"));
  CHECK_THROWS_AS(
      from_json(R"({"omega": [[0,1]], "params": {"samples_per_dim": 17, "overlap": 1.16,
                    "tol": 1e-10, "max_depth": 30, "max_leaves": 100},
                    "nodes": [{"zone": [[0,1]], "domain": [[0,1]], "isdone": [false],
                               "splitdim": 0, "payload": null, "children": [0, 0]}]})"),
      InvalidArgumentError);
}
