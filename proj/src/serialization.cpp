#include "curvedet/serialization.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "curvedet/errors.hpp"

namespace curvedet {

namespace {

using json = nlohmann::json;

std::string format_double(double x) {
  require(std::isfinite(x), "invalid-argument", "non-finite number in JSON output");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

cplx parse_scalar(const json& j, const char* what) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  fail("invalid-argument", std::string(what) + ": expected a number or [re, im]");
}

int parse_int(const json& j, const char* what) {
  require(j.is_number_integer(), "invalid-argument", std::string(what) + ": expected an integer");
  return j.get<int>();
}

json parse_root(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail("invalid-argument", std::string("JSON parse failure: ") + e.what());
  }
}

}  // namespace

void JsonWriter::separate() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  separate();
  out_ += escape(name);
  out_ += ':';
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  separate();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool x) {
  separate();
  out_ += x ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& x) {
  separate();
  out_ += escape(x);
  return *this;
}

JsonWriter& JsonWriter::value(const char* x) { return value(std::string(x)); }

JsonWriter& JsonWriter::value(cplx x) {
  separate();
  out_ += '[';
  out_ += format_double(x.real());
  out_ += ',';
  out_ += format_double(x.imag());
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::value(const Vec& v) {
  begin_array();
  for (int i = 0; i < v.size(); ++i) value(v(i));
  return end_array();
}

JsonWriter& JsonWriter::value(const Mat& m) {
  begin_array();
  for (int r = 0; r < m.rows(); ++r) {
    begin_array();
    for (int c = 0; c < m.cols(); ++c) value(m(r, c));
    end_array();
  }
  return end_array();
}

JsonWriter& JsonWriter::value(const Poly& p) {
  begin_array();
  for (cplx c : p.coeffs()) value(c);
  return end_array();
}

JsonWriter& JsonWriter::raw(const std::string& json) {
  separate();
  out_ += json;
  return *this;
}

GammaTensor gamma_from_json(const std::string& text) {
  const json root = parse_root(text);
  require(root.is_object(), "invalid-argument", "tensor file: expected an object");
  require(root.contains("d") && root.contains("k") && root.contains("n"), "invalid-argument",
          "tensor file: missing d, k, or n");
  GammaTensor g = make_gamma(parse_int(root["d"], "d"), parse_int(root["k"], "k"),
                             parse_int(root["n"], "n"));
  require(root.contains("entries") && root["entries"].is_array(), "invalid-argument",
          "tensor file: missing entries array");
  for (const json& entry : root["entries"]) {
    require(entry.is_object() && entry.contains("I") && entry.contains("matrix"),
            "invalid-argument", "tensor entry: expected {I, matrix}");
    IndexSet I;
    for (const json& idx : entry["I"]) I.push_back(parse_int(idx, "I"));
    const json& rows = entry["matrix"];
    require(rows.is_array() && static_cast<int>(rows.size()) == g.n, "invalid-argument",
            "tensor entry " + to_string(I) + ": matrix must have n rows");
    Mat block(g.n, g.n);
    for (int r = 0; r < g.n; ++r) {
      require(rows[r].is_array() && static_cast<int>(rows[r].size()) == g.n, "invalid-argument",
              "tensor entry " + to_string(I) + ": matrix must have n columns");
      for (int c = 0; c < g.n; ++c) block(r, c) = parse_scalar(rows[r][c], "matrix entry");
    }
    g.set(I, std::move(block));
  }
  return g;
}

std::string gamma_to_json(const GammaTensor& g) {
  JsonWriter w;
  w.begin_object();
  w.key("d").value(g.d);
  w.key("k").value(g.k);
  w.key("n").value(g.n);
  w.key("entries").begin_array();
  for (const auto& [I, block] : g.entries) {
    w.begin_object();
    w.key("I").begin_array();
    for (int i : I) w.value(i);
    w.end_array();
    w.key("matrix").value(block);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

RationalCurve curve_from_json(const std::string& text) {
  const json root = parse_root(text);
  require(root.is_object() && root.contains("mu") && root["mu"].is_array(), "invalid-argument",
          "curve file: expected {mu: [[...], ...]}");
  RationalCurve curve;
  for (const json& coeffs : root["mu"]) {
    require(coeffs.is_array(), "invalid-argument", "curve file: each mu entry is an array");
    std::vector<cplx> c;
    for (const json& x : coeffs) c.push_back(parse_scalar(x, "coefficient"));
    curve.mu.push_back(Poly(std::move(c)));
  }
  if (root.contains("d"))
    require(parse_int(root["d"], "d") == curve.d(), "invalid-argument",
            "curve file: d does not match the number of coordinates");
  require(curve.d() >= 1, "invalid-argument", "curve file: too few coordinates");
  return curve;
}

SubspaceFile subspace_from_json(const std::string& text) {
  const json root = parse_root(text);
  require(root.is_object() && root.contains("basis") && root["basis"].is_array(),
          "invalid-argument", "subspace file: expected {basis: [[...], ...]}");
  SubspaceFile out;
  for (const json& row : root["basis"]) {
    require(row.is_array() && !row.empty(), "invalid-argument",
            "subspace file: each basis vector is a nonempty array");
    Vec v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = parse_scalar(row[i], "basis entry");
    out.basis.push_back(std::move(v));
  }
  require(!out.basis.empty(), "invalid-argument", "subspace file: empty basis");
  if (root.contains("u")) {
    const json& row = root["u"];
    require(row.is_array() && !row.empty(), "invalid-argument",
            "subspace file: u must be a nonempty array");
    Vec v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = parse_scalar(row[i], "u entry");
    out.u = std::move(v);
  }
  return out;
}

std::string curve_to_json(const RationalCurve& curve) {
  JsonWriter w;
  w.begin_object();
  w.key("d").value(curve.d());
  w.key("n").value(curve.degree());
  w.key("mu").begin_array();
  for (const Poly& p : curve.mu) w.value(p);
  w.end_array();
  w.end_object();
  return w.str();
}

namespace {

void write_dividing(JsonWriter& w, const DividingReport& rep) {
  w.begin_object();
  w.key("verdict").value(rep.verdict);
  w.key("orientation_sign").value(rep.orientation_sign);
  w.key("poles").begin_array();
  for (cplx p : rep.poles) w.value(p);
  w.end_array();
  w.key("residues").begin_array();
  for (cplx r : rep.residues) w.value(r);
  w.end_array();
  w.key("chart_shift");
  rep.chart_shift ? w.value(*rep.chart_shift) : w.null();
  w.key("failure_witness");
  rep.failure_witness ? w.value(*rep.failure_witness) : w.null();
  w.key("witness_root");
  rep.witness_root ? w.value(*rep.witness_root) : w.null();
  w.end_object();
}

}  // namespace

std::string witness_report_to_json(const WitnessReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("witness").value(rep.witness);
  w.key("disjoint").value(rep.exact.disjoint);
  w.key("reason").value(rep.exact.reason);
  w.key("dividing");
  write_dividing(w, rep.exact.dividing);
  w.key("definite_sign");
  rep.definite_sign ? w.value(*rep.definite_sign) : w.null();
  w.key("sampled_real");
  rep.sampled ? w.value(rep.sampled->all_real) : w.null();
  w.key("sections_checked");
  rep.sampled ? w.value(rep.sampled->sections_checked) : w.null();
  w.key("dual_pair").begin_object();
  w.key("a").value(rep.exact.pair.a);
  w.key("b").value(rep.exact.pair.b);
  w.key("A").value(rep.exact.pair.A);
  w.key("B").value(rep.exact.pair.B);
  w.end_object();
  w.end_object();
  return w.str();
}

std::string lmi_to_json(const LmiSystem& sys) {
  JsonWriter w;
  w.begin_object();
  w.key("d").value(sys.d);
  w.key("k").value(sys.k);
  w.key("n").value(sys.n);
  w.key("terms").begin_array();
  for (std::size_t i = 0; i < sys.sets.size(); ++i) {
    w.begin_object();
    w.key("J").begin_array();
    for (int j : sys.sets[i]) w.value(j);
    w.end_array();
    w.key("coeff").value(sys.coeffs[i]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string slice_to_json(const std::vector<SlicePoint>& points) {
  JsonWriter w;
  w.begin_object();
  w.key("count").value(static_cast<int>(points.size()));
  w.key("points").begin_array();
  for (const SlicePoint& pt : points) {
    w.begin_object();
    w.key("t").begin_array();
    for (cplx t : pt.t) w.value(t);
    w.end_array();
    w.key("mu").value(pt.mu);
    w.key("kernel").value(pt.kernel);
    w.key("residual").value(pt.residual);
    w.key("multiplicity").value(pt.multiplicity);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace curvedet
