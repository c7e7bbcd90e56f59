#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvedet/curves.hpp"
#include "curvedet/detrep.hpp"
#include "curvedet/exterior.hpp"
#include "curvedet/hyperbolicity.hpp"

namespace curvedet {

// Deterministic JSON writer: insertion order preserved, numbers printed with
// %.17g (round-trip exact), complex values always as [re, im]. Output is
// byte-identical for identical inputs, which the report formats rely on.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(bool x);
  JsonWriter& value(const std::string& x);
  JsonWriter& value(const char* x);
  JsonWriter& value(cplx x);
  JsonWriter& null();
  JsonWriter& value(const Vec& v);
  JsonWriter& value(const Mat& m);  // array of rows
  JsonWriter& value(const Poly& p);
  JsonWriter& raw(const std::string& json);  // embed pre-serialized JSON
  std::string str() const { return out_; }

 private:
  void separate();
  std::string out_;
  std::vector<bool> first_;
  bool pending_key_ = false;
};

// Tensor files: {"d": ..., "k": ..., "n": ..., "entries": [{"I": [...],
// "matrix": [[...], ...]}, ...]}. Scalars may be bare reals or [re, im].
GammaTensor gamma_from_json(const std::string& text);
std::string gamma_to_json(const GammaTensor& g);

// Curve files: {"d": ..., "mu": [[c0, c1, ...], ...]}, coefficients ascending.
RationalCurve curve_from_json(const std::string& text);
std::string curve_to_json(const RationalCurve& curve);

// Subspace files: {"basis": [[...], ...], "u": [...]}, u optional.
struct SubspaceFile {
  std::vector<Vec> basis;
  std::optional<Vec> u;
};
SubspaceFile subspace_from_json(const std::string& text);

std::string witness_report_to_json(const WitnessReport& rep);
std::string lmi_to_json(const LmiSystem& sys);
std::string slice_to_json(const std::vector<SlicePoint>& points);

}  // namespace curvedet
