#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "curvedet/curves.hpp"
#include "curvedet/detrep.hpp"
#include "curvedet/errors.hpp"
#include "curvedet/hyperbolicity.hpp"
#include "curvedet/serialization.hpp"
#include "fixtures.hpp"

using namespace curvedet;
using fixtures::max_abs_diff;
using fixtures::thrown_code;
using fixtures::unit;
using fixtures::vec;
using njson = nlohmann::json;

namespace {

RationalCurve pick_curve() {
  RationalCurve c;
  c.mu = {Poly{0, -1.0, 0, 1.0}, Poly{1.0, 0, -3.0}, Poly{0, 0, 0, 1.0}, Poly{0, 1.0, 1.0}};
  return c;
}

}  // namespace

TEST_SUITE("serialization") {

TEST_CASE("JsonWriter emits valid JSON and round-trips doubles exactly") {
  const std::vector<double> awkward{1.0 / 3.0,
                                    3.141592653589793,
                                    -2.2250738585072014e-308,
                                    1.7976931348623157e308,
                                    5e-324,
                                    -0.0,
                                    123456789.123456789};
  JsonWriter w;
  w.begin_object();
  w.key("xs").begin_array();
  for (double x : awkward) w.value(x);
  w.end_array();
  w.key("z").value(cplx(0.1, -0.2));
  w.key("s").value("quote \" slash \\ tab \t nl \n");
  w.key("flag").value(true);
  w.key("none").null();
  w.key("sub").begin_object().key("k").value(7).end_object();
  w.end_object();

  const njson root = njson::parse(w.str());  // throws on malformed output
  for (std::size_t i = 0; i < awkward.size(); ++i) {
    const double back = root["xs"][i].get<double>();
    CHECK(back == awkward[i]);  // 17 significant digits identify the double
  }
  CHECK(root["z"][0].get<double>() == 0.1);
  CHECK(root["z"][1].get<double>() == -0.2);
  CHECK(root["s"].get<std::string>() == "quote \" slash \\ tab \t nl \n");
  CHECK(root["flag"].get<bool>());
  CHECK(root["none"].is_null());
  CHECK(root["sub"]["k"].get<int>() == 7);

  CHECK(thrown_code([] { JsonWriter().value(std::numeric_limits<double>::quiet_NaN()); }) ==
        "invalid-argument");
  CHECK(thrown_code([] { JsonWriter().value(std::numeric_limits<double>::infinity()); }) ==
        "invalid-argument");
}

TEST_CASE("tensor files round-trip exactly and deterministically") {
  GammaTensor g = fixtures::twisted_cubic();
  // exercise non-integer and complex entries too
  Mat m = g.coeff({0, 1});
  m(1, 2) = cplx(1.0 / 3.0, -2.0 / 7.0);
  g.set({0, 1}, m);

  const std::string text = gamma_to_json(g);
  const GammaTensor back = gamma_from_json(text);
  CHECK(back.d == g.d);
  CHECK(back.k == g.k);
  CHECK(back.n == g.n);
  CHECK(back.entries.size() == g.entries.size());
  for (const auto& [I, block] : g.entries) CHECK(max_abs_diff(back.coeff(I), block) == 0.0);

  // byte-identical reserialization
  CHECK(gamma_to_json(back) == text);
  CHECK(gamma_to_json(fixtures::twisted_cubic()) == gamma_to_json(fixtures::twisted_cubic()));
}

TEST_CASE("tensor reader accepts bare reals and [re, im] pairs") {
  const std::string text = R"({"d": 2, "k": 1, "n": 1,
    "entries": [{"I": [0, 1], "matrix": [[2.5]]},
                {"I": [0, 2], "matrix": [[[1.0, -3.0]]]}]})";
  const GammaTensor g = gamma_from_json(text);
  CHECK(g.coeff({0, 1})(0, 0) == cplx(2.5, 0.0));
  CHECK(g.coeff({0, 2})(0, 0) == cplx(1.0, -3.0));
  CHECK(g.coeff({1, 2})(0, 0) == cplx(0.0, 0.0));
}

TEST_CASE("tensor reader rejects malformed input") {
  CHECK(thrown_code([] { gamma_from_json("not json at all"); }) == "invalid-argument");
  CHECK(thrown_code([] { gamma_from_json("[1, 2, 3]"); }) == "invalid-argument");
  CHECK(thrown_code([] { gamma_from_json(R"({"d": 2, "k": 1})") ; }) == "invalid-argument");
  CHECK(thrown_code([] {
          gamma_from_json(R"({"d": 2.5, "k": 1, "n": 1, "entries": []})");
        }) == "invalid-argument");
  // matrix with the wrong row count
  CHECK(thrown_code([] {
          gamma_from_json(R"({"d": 2, "k": 1, "n": 2,
            "entries": [{"I": [0, 1], "matrix": [[1, 0]]}]})");
        }) == "invalid-argument");
  // index set out of range
  CHECK(thrown_code([] {
          gamma_from_json(R"({"d": 2, "k": 1, "n": 1,
            "entries": [{"I": [0, 5], "matrix": [[1]]}]})");
        }) == "invalid-argument");
  // complex pair with a non-number
  CHECK(thrown_code([] {
          gamma_from_json(R"({"d": 2, "k": 1, "n": 1,
            "entries": [{"I": [0, 1], "matrix": [[["a", 0]]]}]})");
        }) == "invalid-argument");
}

TEST_CASE("curve files round-trip") {
  const RationalCurve curve = pick_curve();
  const std::string text = curve_to_json(curve);
  const RationalCurve back = curve_from_json(text);
  REQUIRE(back.mu.size() == curve.mu.size());
  for (std::size_t i = 0; i < curve.mu.size(); ++i) CHECK(back.mu[i] == curve.mu[i]);
  CHECK(curve_to_json(back) == text);

  const njson root = njson::parse(text);
  CHECK(root["d"].get<int>() == 3);
  CHECK(root["n"].get<int>() == 3);

  CHECK(thrown_code([] { curve_from_json(R"({"mu": 3})"); }) == "invalid-argument");
  CHECK(thrown_code([] { curve_from_json(R"({"mu": [[1]]})"); }) == "invalid-argument");
  CHECK(thrown_code([] {
          curve_from_json(R"({"d": 5, "mu": [[1], [0, 1], [0, 0, 1]]})");
        }) == "invalid-argument");
}

TEST_CASE("subspace files: basis rows, optional chart point, mixed scalars") {
  const SubspaceFile sub = subspace_from_json(
      R"({"basis": [[0, 0, 1, 0], [0, 0, [0, 1], 1]], "u": [1, 0, 0, -2.5]})");
  REQUIRE(sub.basis.size() == 2);
  CHECK(sub.basis[0].size() == 4);
  CHECK(sub.basis[1](2) == cplx(0.0, 1.0));
  REQUIRE(sub.u.has_value());
  CHECK((*sub.u)(3) == cplx(-2.5, 0.0));

  const SubspaceFile bare = subspace_from_json(R"({"basis": [[1, 2, 3]]})");
  CHECK_FALSE(bare.u.has_value());

  CHECK(thrown_code([] { subspace_from_json(R"({"basis": []})"); }) == "invalid-argument");
  CHECK(thrown_code([] { subspace_from_json(R"({"u": [1, 2]})"); }) == "invalid-argument");
  CHECK(thrown_code([] { subspace_from_json(R"({"basis": [[1], []]})"); }) ==
        "invalid-argument");
}

TEST_CASE("witness report JSON carries verdicts and the dual pair") {
  const WitnessReport rep =
      witness_report(pick_curve(), {unit(4, 2), unit(4, 3)}, 5, 1e-8, 25);
  const std::string text = witness_report_to_json(rep);
  const njson root = njson::parse(text);
  CHECK(root["witness"].get<bool>());
  CHECK(root["disjoint"].get<bool>());
  CHECK(root["reason"].get<std::string>().empty());
  CHECK(root["dividing"]["verdict"].get<bool>());
  CHECK(root["dividing"]["poles"].size() == 3);
  CHECK(root["definite_sign"].get<int>() == -1);
  CHECK(root["sampled_real"].get<bool>());
  CHECK(root["sections_checked"].get<int>() == 25);
  CHECK(root["dual_pair"]["a"].size() == 4);
  CHECK(root["dual_pair"]["B"].is_array());
  // deterministic output
  CHECK(witness_report_to_json(
            witness_report(pick_curve(), {unit(4, 2), unit(4, 3)}, 5, 1e-8, 25)) == text);
}

TEST_CASE("LMI JSON lists one term per Pluecker coordinate") {
  const LmiSystem sys = lmi_export(fixtures::twisted_cubic());
  const njson root = njson::parse(lmi_to_json(sys));
  CHECK(root["d"].get<int>() == 3);
  CHECK(root["k"].get<int>() == 1);
  CHECK(root["n"].get<int>() == 3);
  REQUIRE(root["terms"].size() == 6);
  for (const njson& term : root["terms"]) {
    CHECK(term["J"].size() == 2);
    REQUIRE(term["coeff"].size() == 3);
    CHECK(term["coeff"][0].size() == 3);
  }
}

TEST_CASE("slice JSON reports sorted chart points with multiplicities") {
  const auto pts = slice_intersections(fixtures::twisted_cubic(), {unit(4, 1), unit(4, 2)},
                                       vec({1.0, 0.0, 0.0, 1.0}), 17);
  const njson root = njson::parse(slice_to_json(pts));
  CHECK(root["count"].get<int>() == 3);
  REQUIRE(root["points"].size() == 3);
  for (const njson& pt : root["points"]) {
    CHECK(pt["t"].size() == 2);
    CHECK(pt["multiplicity"].get<int>() == 1);
    CHECK(pt["residual"].get<double>() < 1e-9);
    CHECK(pt["mu"].size() == 4);
    CHECK(pt["kernel"].size() == 3);
  }
  // the real intersection point is sorted last: t = (1, 1)
  CHECK(root["points"][2]["t"][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(root["points"][2]["t"][0][1].get<double>()) < 1e-9);
}

}  // TEST_SUITE
