#include <CLI11.hpp>
#include <Eigen/Dense>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "curvedet/bezoutian.hpp"
#include "curvedet/curves.hpp"
#include "curvedet/detrep.hpp"
#include "curvedet/errors.hpp"
#include "curvedet/exterior.hpp"
#include "curvedet/hyperbolicity.hpp"
#include "curvedet/rng.hpp"
#include "curvedet/serialization.hpp"

namespace {

using namespace curvedet;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "invalid-argument", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  require(out.good(), "invalid-argument", "cannot write " + output_path);
  out << text << "\n";
}

// coordinate_free: the caller's output does not depend on the projective
// coordinate system, so an unnormalized curve may be renormalized on the fly.
// Coordinate-bound commands (lmi, slice) must not silently change the frame
// the user's Pluecker/chart data lives in.
GammaTensor load_gamma(const std::string& gamma_path, const std::string& curve_path,
                       bool coordinate_free = false, std::uint64_t seed = 0) {
  require(gamma_path.empty() != curve_path.empty(), "invalid-argument",
          "pass exactly one of --gamma or --curve");
  if (!gamma_path.empty()) return gamma_from_json(read_file(gamma_path));
  const RationalCurve curve = curve_from_json(read_file(curve_path));
  const CurveValidation v = validate_curve(curve);
  if (v.ok && !v.normalized) {
    require(coordinate_free, "not-normalized",
            "curve file is not normalized; run construct and pass the gamma file instead");
    return construct_gamma(normalize_coordinates(curve, seed).curve);
  }
  return construct_gamma(curve);
}

// Best-conditioned invertible block, or empty when every block is singular.
IndexSet best_pinned_block(const GammaTensor& g) {
  IndexSet best;
  double best_cond = 0.0;
  for (const auto& [I, block] : g.entries) {
    Eigen::JacobiSVD<Mat> svd(block);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) continue;
    const double cond = sv(sv.size() - 1) / sv(0);
    if (cond > 1e-10 && cond > best_cond) {
      best_cond = cond;
      best = I;
    }
  }
  return best;
}

int cmd_examples(const std::string& name, const std::string& output) {
  if (name.empty()) {
    std::string listing;
    for (const std::string& n : builtin_names()) listing += n + "\n";
    if (output.empty()) {
      std::cout << listing;
    } else {
      std::ofstream out(output, std::ios::binary | std::ios::trunc);
      require(out.good(), "invalid-argument", "cannot write " + output);
      out << listing;
    }
    return 0;
  }
  const BuiltinExample ex = builtin_example(name);
  JsonWriter w;
  w.begin_object();
  w.key("name").value(ex.name);
  w.key("summary").value(ex.summary);
  w.key("gamma").raw(gamma_to_json(ex.gamma));
  w.key("curve").raw(curve_to_json(ex.curve));
  w.end_object();
  emit(output, w.str());
  return 0;
}

int cmd_construct(const std::string& curve_path, const std::string& mode_name, std::uint64_t seed,
                  const std::string& output) {
  const RationalCurve curve = curve_from_json(read_file(curve_path));
  const CurveValidation v = validate_curve(curve);
  if (!v.ok) {
    std::cerr << "error: " << v.reason << ": " << v.detail << "\n";
    return 2;
  }
  const NormalizeMode mode =
      mode_name == "real-section" ? NormalizeMode::real_section : NormalizeMode::generic;
  try {
    const NormalizationResult nr = normalize_coordinates(curve, seed, mode);
    const GammaTensor g = construct_gamma(nr.curve);
    const double containment = containment_residual(g, nr.curve, 50, seed ^ 0x7f4a7c15ULL);
    const bool vr = is_very_reasonable(g, seed);
    JsonWriter w;
    w.begin_object();
    w.key("gamma").raw(gamma_to_json(g));
    // The tensor represents the renormalized curve, so ship that curve too:
    // feeding the original file back into verify would fail containment.
    w.key("curve").raw(curve_to_json(nr.curve));
    w.key("report").begin_object();
    w.key("n").value(g.n);
    w.key("divisor").begin_array();
    for (cplx r : nr.divisor) w.value(r);
    w.end_array();
    w.key("change").value(nr.change);
    w.key("containment_residual").value(containment);
    w.key("very_reasonable").value(vr);
    w.end_object();
    w.end_object();
    emit(output, w.str());
    return vr ? 0 : 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const std::string& gamma_path, const std::string& curve_path, int samples,
               std::uint64_t seed, double tol, const std::string& output) {
  const GammaTensor g = gamma_from_json(read_file(gamma_path));
  const Tolerances tols;

  const bool nondeg = is_nondegenerate(g, seed);
  bool have_degree = false;
  int deg = 0;
  if (nondeg && g.k == 1) {
    try {
      deg = degree(g, seed, 5, tols);
      have_degree = true;
    } catch (const error& e) {
      if (e.code() != "transversality-failure") throw;
    }
  }
  const bool vr = nondeg && have_degree && deg == g.n;

  bool have_commutation = false;
  CommutationReport comm;
  if (nondeg && g.k == 1) {
    Rng rng(seed ^ 0x426f9be1ULL);
    for (int attempt = 0; attempt < 4 && !have_commutation; ++attempt) {
      std::vector<Vec> basis(g.d - 1);
      for (Vec& v : basis) {
        v = Vec(g.d + 1);
        for (int i = 0; i <= g.d; ++i) v(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      }
      Vec u(g.d + 1);
      for (int i = 0; i <= g.d; ++i) u(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      try {
        comm = pencil_commutation_report(g, basis, u, rng.next_u64());
        have_commutation = true;
      } catch (const error& e) {
        if (e.code() != "transversality-failure" && e.code() != "singular-base-plane") throw;
      }
    }
  }

  bool have_recon = false;
  double recon = 0.0;
  const IndexSet pinned = best_pinned_block(g);
  if (!pinned.empty()) {
    try {
      recon = vr_struct_residual(g, pinned);
      have_recon = true;
    } catch (const error&) {
    }
  }

  bool have_containment = false;
  double containment = 0.0;
  if (!curve_path.empty()) {
    const RationalCurve curve = curve_from_json(read_file(curve_path));
    containment = containment_residual(g, curve, samples, seed ^ 0x7f4a7c15ULL);
    have_containment = true;
  }

  const bool pass = vr && (!have_commutation || (comm.commuting && comm.semisimple)) &&
                    (!have_recon || recon <= tol) && (!have_containment || containment <= tol);

  JsonWriter w;
  w.begin_object();
  w.key("d").value(g.d);
  w.key("k").value(g.k);
  w.key("n").value(g.n);
  w.key("nondegenerate").value(nondeg);
  w.key("degree");
  have_degree ? w.value(deg) : w.null();
  w.key("very_reasonable").value(vr);
  w.key("max_commutator");
  have_commutation ? w.value(comm.max_commutator) : w.null();
  w.key("semisimple");
  have_commutation ? w.value(comm.semisimple) : w.null();
  w.key("reconstruction_residual");
  have_recon ? w.value(recon) : w.null();
  w.key("containment_residual");
  have_containment ? w.value(containment) : w.null();
  w.key("pass").value(pass);
  w.end_object();
  emit(output, w.str());
  return pass ? 0 : 1;
}

int cmd_witness(const std::string& curve_path, const std::string& subspace_path, int samples,
                std::uint64_t seed, double tol, const std::string& output) {
  const RationalCurve curve = curve_from_json(read_file(curve_path));
  const SubspaceFile sub = subspace_from_json(read_file(subspace_path));
  const WitnessReport rep = witness_report(curve, sub.basis, seed, tol, samples);
  emit(output, witness_report_to_json(rep));
  return rep.witness ? 0 : 1;
}

int cmd_lmi(const std::string& gamma_path, const std::string& curve_path,
            const std::string& output) {
  emit(output, lmi_to_json(lmi_export(load_gamma(gamma_path, curve_path))));
  return 0;
}

int cmd_slice(const std::string& gamma_path, const std::string& curve_path,
              const std::string& subspace_path, std::uint64_t seed, const std::string& output) {
  const GammaTensor g = load_gamma(gamma_path, curve_path);
  const SubspaceFile sub = subspace_from_json(read_file(subspace_path));
  require(sub.u.has_value(), "invalid-argument", "slice needs a u vector in the subspace file");
  JsonWriter w;
  w.begin_object();
  w.key("slice").raw(slice_to_json(slice_intersections(g, sub.basis, *sub.u, seed)));
  if (g.k == 1 && !sub.basis.empty()) {
    std::vector<Vec> flag(sub.basis.begin(), sub.basis.end() - 1);
    w.key("det_profile").value(schubert_det_profile(g, flag, sub.basis.back(), *sub.u));
  }
  w.end_object();
  emit(output, w.str());
  return 0;
}

int cmd_degree(const std::string& gamma_path, const std::string& curve_path, std::uint64_t seed,
               int trials, const std::string& output) {
  const GammaTensor g = load_gamma(gamma_path, curve_path, /*coordinate_free=*/true, seed);
  const int deg = degree(g, seed, trials);
  JsonWriter w;
  w.begin_object();
  w.key("n").value(g.n);
  w.key("degree").value(deg);
  w.key("very_reasonable").value(is_very_reasonable(g, seed));
  w.end_object();
  emit(output, w.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinantal representations of rational curves: construction, verification, "
               "and hyperbolicity witnesses"};
  app.require_subcommand(1);

  std::string gamma_path, curve_path, subspace_path, output, name;
  std::string mode = "generic";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int samples = 64;
  int trials = 5;

  CLI::App* examples = app.add_subcommand("examples", "list builtin examples or print one");
  examples->add_option("name", name, "example name (omit to list)");
  examples->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* construct = app.add_subcommand("construct", "build a representation from a curve");
  construct->add_option("--curve", curve_path, "curve JSON file")->required();
  construct->add_option("--mode", mode, "coordinate normalization mode")
      ->check(CLI::IsMember({"generic", "real-section"}));
  construct->add_option("--seed", seed, "seed for normalization retries")->required();
  construct->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "verify a representation");
  verify->add_option("--gamma", gamma_path, "tensor JSON file")->required();
  verify->add_option("--curve", curve_path, "curve JSON file for containment checking");
  verify->add_option("--samples", samples, "containment sample count");
  verify->add_option("--seed", seed, "random seed")->required();
  verify->add_option("--tol", tol, "acceptance threshold for residuals");
  verify->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* witness = app.add_subcommand("witness", "decide the witness property of a subspace");
  witness->add_option("--curve", curve_path, "curve JSON file")->required();
  witness->add_option("--subspace", subspace_path, "subspace JSON file")->required();
  witness->add_option("--samples", samples, "pencil sections sampled for real-rootedness");
  witness->add_option("--seed", seed, "random seed")->required();
  witness->add_option("--tol", tol, "intersection tolerance");
  witness->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* lmi = app.add_subcommand("lmi", "export the witness region LMI");
  lmi->add_option("--gamma", gamma_path, "tensor JSON file");
  lmi->add_option("--curve", curve_path, "curve JSON file");
  lmi->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* slice = app.add_subcommand("slice", "intersect the locus with a hyperplane chart");
  slice->add_option("--gamma", gamma_path, "tensor JSON file");
  slice->add_option("--curve", curve_path, "curve JSON file");
  slice->add_option("--subspace", subspace_path, "subspace JSON file with basis and u")
      ->required();
  slice->add_option("--seed", seed, "random seed")->required();
  slice->add_option("-o,--out", output, "output file (default stdout)");

  CLI::App* deg = app.add_subcommand("degree", "measure the locus degree");
  deg->add_option("--gamma", gamma_path, "tensor JSON file");
  deg->add_option("--curve", curve_path, "curve JSON file");
  deg->add_option("--seed", seed, "random seed")->required();
  deg->add_option("--trials", trials, "number of slice trials");
  deg->add_option("-o,--out", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (examples->parsed()) return cmd_examples(name, output);
    if (construct->parsed()) return cmd_construct(curve_path, mode, seed, output);
    if (verify->parsed()) return cmd_verify(gamma_path, curve_path, samples, seed, tol, output);
    if (witness->parsed())
      return cmd_witness(curve_path, subspace_path, samples, seed, tol, output);
    if (lmi->parsed()) return cmd_lmi(gamma_path, curve_path, output);
    if (slice->parsed()) return cmd_slice(gamma_path, curve_path, subspace_path, seed, output);
    if (deg->parsed()) return cmd_degree(gamma_path, curve_path, seed, trials, output);
  } catch (const curvedet::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
