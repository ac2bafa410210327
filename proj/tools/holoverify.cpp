#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holo/covering.hpp"
#include "holo/matrix_io.hpp"
#include "holo/polar.hpp"
#include "holo/rng.hpp"
#include "holo/snf.hpp"
#include "holo/sqrtm.hpp"
#include "holo/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& out, const holo::Json& j) {
  if (out.empty())
    std::printf("%s\n", j.dump(2).c_str());
  else
    holo::write_json_file(out, j);
}

int run_verify(const std::string& suite, const holo::RunConfig& base) {
  holo::RunConfig cfg = base;
  cfg.suite = holo::parse_suite(suite);
  cfg.validate();
  const holo::Report report = holo::run_suite(cfg);
  const holo::Json& j = report.json;
  std::printf("suite %s  group %s  trials %d  seed %llu\n",
              j["suite"].get<std::string>().c_str(), cfg.group.c_str(),
              cfg.trials, static_cast<unsigned long long>(cfg.seed));
  for (const auto& c : j["claims"]) {
    const auto& params = c["parameters"];
    std::string tag;
    if (params.contains("delta"))
      tag = "delta=" + holo::Json(params["delta"]).dump();
    if (params.contains("skipped")) tag += tag.empty() ? "skipped" : " skipped";
    std::printf("  %-30s %-12s trials=%-5d failures=%d\n",
                c["claim"].get<std::string>().c_str(), tag.c_str(),
                c["trials"].get<int>(), c["failures"].get<int>());
  }
  std::printf("%s  (%zu claims, %d failures, %.2fs)\n",
              report.failures == 0 ? "PASS" : "FAIL", j["claims"].size(),
              report.failures, j["wall_time_seconds"].get<double>());
  if (!cfg.out.empty()) std::printf("report written to %s\n", cfg.out.c_str());
  return report.failures == 0 ? kExitPass : kExitFail;
}

int run_counterexample(const std::string& claim,
                       const std::vector<double>& deltas, long budget,
                       std::uint64_t seed, const std::string& out) {
  const holo::Report report =
      holo::find_counterexample(claim, deltas, budget, seed);
  const holo::Json& j = report.json;
  if (report.failures == 0) {
    std::printf("claim %s: counterexample found at delta=%s after %s attempts (%s)\n",
                claim.c_str(), j["delta_used"].dump().c_str(),
                j["attempts"].dump().c_str(),
                j["witness"]["source"].get<std::string>().c_str());
  } else {
    std::printf("claim %s: no counterexample within budget %ld\n", claim.c_str(),
                budget);
  }
  emit(out, j);
  return report.failures == 0 ? kExitPass : kExitFail;
}

int run_decompose(const std::string& input, const std::string& mode,
                  const std::string& out) {
  const holo::MatrixXcd m = holo::read_complex_matrix(input);
  holo::Json j;
  j["schema"] = 1;
  j["mode"] = mode;
  j["input"] = holo::complex_matrix_to_json(m);
  if (mode == "sqrt") {
    const holo::SqrtReport r = holo::principal_sqrt(m);
    j["S"] = holo::complex_matrix_to_json(r.S);
    j["residual"] = r.residual;
    std::printf("sqrt: residual %.3e\n", r.residual);
  } else if (mode == "complex-polar") {
    const holo::PolarFactors r = holo::complex_polar(m);
    j["S"] = holo::complex_matrix_to_json(r.S);
    j["Q"] = holo::complex_matrix_to_json(r.Q);
    j["residual_sq"] = r.residual_sq;
    j["residual_orth"] = r.residual_orth;
    std::printf("complex polar: residual_sq %.3e  residual_orth %.3e\n",
                r.residual_sq, r.residual_orth);
  } else if (mode == "real-polar") {
    if (holo::imag_part(m).norm() > 0)
      throw holo::InvalidInputError("real-polar: input must be real");
    const holo::MatrixXd g = holo::real_part(m);
    const holo::RealPolarFactors r = holo::real_polar(g);
    const double residual = (r.P * r.U - g).norm() / std::max(1.0, g.norm());
    j["P"] = holo::complex_matrix_to_json(r.P.cast<holo::Complex>());
    j["U"] = holo::complex_matrix_to_json(r.U.cast<holo::Complex>());
    j["residual"] = residual;
    std::printf("real polar: residual %.3e\n", residual);
  } else {
    throw holo::InvalidInputError(
        "unknown mode '" + mode +
        "' (expected sqrt, complex-polar, real-polar)");
  }
  emit(out, j);
  return kExitPass;
}

int run_snf(const std::string& input, const std::string& out) {
  const holo::IntMatrix m = holo::read_integer_matrix(input);
  const holo::SNFResult r = holo::smith_normal_form(m);
  const holo::AbelianSplit split = holo::split_abelian(m);
  holo::Json j;
  j["schema"] = 1;
  j["mode"] = "snf";
  j["input"] = holo::integer_matrix_to_json(m);
  j["U"] = holo::integer_matrix_to_json(r.U);
  j["D"] = holo::integer_matrix_to_json(r.D);
  j["V"] = holo::integer_matrix_to_json(r.V);
  j["U_inv"] = holo::integer_matrix_to_json(r.U_inv);
  j["V_inv"] = holo::integer_matrix_to_json(r.V_inv);
  j["torsion_invariants"] = split.torsion_invariants;
  j["free_rank"] = split.free_rank;
  std::string diag;
  for (int i = 0; i < std::min(r.D.rows(), r.D.cols()); ++i)
    diag += (i ? ", " : "") + std::to_string(r.D(i, i));
  std::printf("D = diag(%s), free rank %d\n", diag.c_str(), split.free_rank);
  emit(out, j);
  return kExitPass;
}

holo::MatrixXd rotation2(double theta) {
  holo::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

int run_cover_demo(const std::string& demo, std::uint64_t seed) {
  constexpr double pi = std::numbers::pi;
  if (demo == "winding") {
    bool ok = true;
    for (int k = -2; k <= 2; ++k) {
      const int samples = 64 * std::max(1, std::abs(k)) + 1;
      std::vector<holo::MatrixXd> loop;
      for (int j = 0; j < samples; ++j)
        loop.push_back(rotation2(2.0 * pi * k * j / samples));
      const int got = holo::winding_number(loop);
      std::printf("loop t -> R(2 pi k t), k=%+d: winding %+d\n", k, got);
      ok = ok && got == k;
    }
    holo::RandomStream rng(seed);
    holo::MatrixXd a(2, 2);
    const double s = std::exp(rng.uniform(0.2, 1.0));
    a << s, 0.0, 0.0, 1.0 / s;
    std::vector<holo::MatrixXd> loop;
    for (int j = 0; j < 257; ++j)
      loop.push_back(a * rotation2(2.0 * pi * j / 257) * a.inverse());
    const int got = holo::winding_number(loop);
    std::printf("conjugated loop a R a^-1 (a = diag(%.3f, %.3f)): winding %+d\n",
                s, 1.0 / s, got);
    ok = ok && got == 1;
    return ok ? kExitPass : kExitFail;
  }
  if (demo == "multiply") {
    holo::RandomStream rng(seed);
    const auto sample = [&rng] {
      holo::MatrixXd sym(2, 2);
      const double a = 0.8 * rng.normal();
      const double b = 0.8 * rng.normal();
      sym << a, b, b, -a;
      Eigen::SelfAdjointEigenSolver<holo::MatrixXd> es(sym);
      const holo::MatrixXd p = es.eigenvectors() *
                               es.eigenvalues().array().exp().matrix().asDiagonal() *
                               es.eigenvectors().transpose();
      const holo::MatrixXd g = p * rotation2(rng.uniform(-pi, pi));
      const double x = holo::canonical_lift(g) +
                       2.0 * pi * static_cast<double>(rng.uniform_int(-2, 2));
      return holo::make_cover_element(g, x);
    };
    const holo::CoverElement a = sample();
    const holo::CoverElement b = sample();
    const holo::CoverElement ab = holo::cover_multiply(a, b);
    std::printf("a: x = %+.6f\nb: x = %+.6f\na b: x = %+.6f\n", a.x, b.x, ab.x);
    holo::CoverElement a_up = a;
    a_up.x += 2.0 * pi;
    const holo::CoverElement shifted = holo::cover_multiply(a_up, b);
    std::printf("(a + deck) b: x = %+.6f (shift %.12f)\n", shifted.x,
                shifted.x - ab.x);
    const holo::CoverElement half{rotation2(pi), pi};
    const holo::CoverElement full = holo::cover_multiply(half, half);
    std::printf("(R(pi), pi)^2: g = I + %.1e, x = 2 pi + %.1e\n",
                (full.g - holo::MatrixXd::Identity(2, 2)).norm(),
                full.x - 2.0 * pi);
    const bool ok = std::abs(shifted.x - ab.x - 2.0 * pi) < 1e-9 &&
                    std::abs(full.x - 2.0 * pi) < 1e-9;
    return ok ? kExitPass : kExitFail;
  }
  throw holo::InvalidInputError("unknown demo '" + demo +
                                "' (expected winding, multiply)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for cone geometry, matrix square roots,\n"
               "polar factorizations, Siegel-domain group actions, covering\n"
               "spaces and integer normal forms."};
  app.require_subcommand(1);

  std::string suite = "all";
  holo::RunConfig cfg;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "cones, sqrt, polar, action, cover or all");
  verify->add_option("--group", cfg.group, "group name, e.g. gl+:3, sl:2, so:3, so:2,1, sp:4");
  verify->add_option("--n", cfg.n, "size shortcut when --group has no :n part");
  verify->add_option("--delta", cfg.deltas, "tube radii, each in (0, 0.1]");
  verify->add_option("--trials", cfg.trials, "samples per claim");
  verify->add_option("--seed", cfg.seed, "base seed");
  verify->add_option("--tol", cfg.tol, "tolerance for unpinned checks");
  verify->add_option("--radius", cfg.radius, "group sampling radius");
  verify->add_option("--out", cfg.out, "write the report JSON here");

  std::string claim;
  std::vector<double> cex_deltas;
  long budget = 100000;
  std::uint64_t cex_seed = 7;
  std::string cex_out;
  CLI::App* cex = app.add_subcommand("counterexample",
                                     "Search for a counterexample witness");
  cex->add_option("--claim", claim, "one of: B2-not-psd, hx-not-in-V, hhTx-not-in-V, hTh-not-in-Mplus, product-not-in-M")
      ->required();
  cex->add_option("--delta", cex_deltas, "apertures to try, each in (0, 0.5)");
  cex->add_option("--budget", budget, "max candidates");
  cex->add_option("--seed", cex_seed, "search seed");
  cex->add_option("--out", cex_out, "write the witness JSON here");

  std::string input, mode = "sqrt", dec_out;
  CLI::App* dec = app.add_subcommand("decompose", "Factor a matrix from JSON");
  dec->add_option("--input", input, "matrix JSON file")->required();
  dec->add_option("--mode", mode, "sqrt, complex-polar or real-polar");
  dec->add_option("--out", dec_out, "write the factors JSON here");

  std::string snf_input, snf_out;
  CLI::App* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--input", snf_input, "integer matrix JSON file")->required();
  snf->add_option("--out", snf_out, "write U, D, V and the inverses here");

  std::string demo = "winding";
  std::uint64_t cover_seed = 3;
  CLI::App* cover = app.add_subcommand("cover", "Covering space demos");
  cover->add_option("--demo", demo, "winding or multiply");
  cover->add_option("--seed", cover_seed, "demo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify(suite, cfg);
    if (*cex) {
      if (cex_deltas.empty()) cex_deltas = {0.02, 0.05, 0.1, 0.3};
      return run_counterexample(claim, cex_deltas, budget, cex_seed, cex_out);
    }
    if (*dec) return run_decompose(input, mode, dec_out);
    if (*snf) return run_snf(snf_input, snf_out);
    if (*cover) return run_cover_demo(demo, cover_seed);
  } catch (const holo::InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const holo::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
