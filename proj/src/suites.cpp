#include "holo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unsupported/Eigen/MatrixFunctions>

#include "holo/cones.hpp"
#include "holo/covering.hpp"
#include "holo/liegroups.hpp"
#include "holo/parallel.hpp"
#include "holo/polar.hpp"
#include "holo/rng.hpp"
#include "holo/snf.hpp"
#include "holo/sqrtm.hpp"

namespace holo {

namespace {

constexpr double kPi = std::numbers::pi;

struct Claim {
  std::string id;
  Json parameters = Json::object();
  int trials = 0;
  int failures = 0;
  Json witnesses = Json::array();
  Json constants = Json::object();

  void fail(Json witness) {
    ++failures;
    if (witnesses.size() < 5) witnesses.push_back(std::move(witness));
  }
  Json to_json() const {
    Json j;
    j["claim"] = id;
    j["parameters"] = parameters;
    j["trials"] = trials;
    j["failures"] = failures;
    j["witnesses"] = witnesses;
    j["constants"] = constants;
    return j;
  }
};

std::uint64_t substream(int salt, std::size_t delta_index, int trial) {
  return (static_cast<std::uint64_t>(salt & 0xffff) << 48) |
         ((static_cast<std::uint64_t>(delta_index) & 0xff) << 40) |
         static_cast<std::uint64_t>(trial);
}

double right_margin_raw(Complex z, double eps) {
  return eps * z.real() - std::abs(z.imag());
}

double vector_margin_raw(const VectorXcd& z, double eps) {
  return eps * z.real().norm() - z.imag().norm();
}

MatrixXd rotation2(double theta) {
  MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Json claims_to_json(const std::vector<Claim>& claims) {
  Json arr = Json::array();
  for (const Claim& c : claims) arr.push_back(c.to_json());
  return arr;
}

int total_failures(const std::vector<Claim>& claims) {
  int n = 0;
  for (const Claim& c : claims) n += c.failures;
  return n;
}

MatrixXcd random_symmetric_complex(RandomStream& rng, int n, double delta) {
  const MatrixXd q = rng.normal_matrix(n, n);
  const MatrixXd x = q * q.transpose();
  const MatrixXd y = rng.symmetric_matrix(n);
  const double ynorm = operator_norm(y);
  const double scale =
      ynorm > 0 ? delta * rng.uniform(0.0, 2.0) * operator_norm(x) / ynorm : 0.0;
  return x.cast<Complex>() + Complex(0, 1) * (scale * y).cast<Complex>();
}

// A in the matrix cone at aperture delta with a 10 percent margin.
MatrixXcd random_matrix_in_cone(RandomStream& rng, int n, double delta) {
  const MatrixXd x = rng.normal_matrix(n, n);
  const MatrixXd y = rng.normal_matrix(n, n);
  const double ynorm = operator_norm(y);
  const double scale =
      ynorm > 0
          ? 0.9 * delta * rng.uniform(0.1, 1.0) * operator_norm(x) / ynorm
          : 0.0;
  return x.cast<Complex>() + Complex(0, 1) * (scale * y).cast<Complex>();
}

// ---------------------------------------------------------------- cones

void cones_suite(const RunConfig& cfg, const GroupSpec& spec,
                 std::vector<Claim>& claims) {
  for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
    const double delta = cfg.deltas[di];
    Claim quad, gram, scale, mono;
    quad.id = "quadratic-form-cone";
    gram.id = "tube-gram-cone";
    scale.id = "cone-scale-invariance";
    mono.id = "cone-monotonicity";
    for (Claim* c : {&quad, &gram, &scale, &mono}) {
      c->parameters["delta"] = delta;
      c->parameters["group"] = spec.name;
      c->trials = cfg.trials;
    }
    gram.parameters["aperture_factor"] = 3.0;

    struct Trial {
      bool quad_ok = true, gram_ok = true, scale_ok = true, mono_ok = true;
      double gram_margin = 0.0;
      Json quad_w, gram_w, scale_w, mono_w;
    };
    std::vector<Trial> results(cfg.trials);

    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(11, di, t));
      MatrixXcd b;
      double aperture;
      const bool tube_branch = (t % 2 == 0);
      if (tube_branch) {
        const TubeSample ts = sample_tube(spec, delta, cfg.radius, rng);
        b = ts.h * ts.h.transpose();
        aperture = 3.0 * delta;
      } else {
        b = random_symmetric_complex(rng, spec.n, delta);
        aperture = delta;
      }
      const ConeParams params(aperture);
      const bool member = in_symmetric_cone(b, params);
      const double margin = symmetric_cone_margin(b, params);

      if (tube_branch) {
        r.gram_margin = margin;
        if (!member) {
          r.gram_ok = false;
          r.gram_w = {{"matrix", complex_matrix_to_json(b)},
                      {"aperture", aperture},
                      {"margin", margin}};
        }
      }

      const auto witness =
          quadratic_form_witness(b, params, 20, rng.next_u64());
      bool quad_bad = false;
      std::string reason;
      if (member && witness) {
        quad_bad = true;
        reason = "member produced a witness";
      } else if (!member && !witness) {
        quad_bad = true;
        reason = "non-member produced no deterministic witness";
      } else if (witness && in_right_cone(witness->value, params)) {
        quad_bad = true;
        reason = "witness value is inside the scalar cone";
      }
      if (quad_bad) {
        r.quad_ok = false;
        r.quad_w = {{"matrix", complex_matrix_to_json(b)},
                    {"aperture", aperture},
                    {"member", member},
                    {"reason", reason}};
      }

      const double c = rng.uniform(0.1, 10.0);
      if (in_symmetric_cone(c * b, params) != member) {
        r.scale_ok = false;
        r.scale_w = {{"matrix", complex_matrix_to_json(b)},
                     {"aperture", aperture},
                     {"scalar", c}};
      }
      const VectorXcd v = b.col(0);
      if (v.real().norm() > 0 &&
          in_vector_cone(c * v, params) != in_vector_cone(v, params)) {
        r.scale_ok = false;
        r.scale_w = {{"vector_of", complex_matrix_to_json(b)}, {"scalar", c}};
      }
      if (in_matrix_cone(c * b, params) != in_matrix_cone(b, params)) {
        r.scale_ok = false;
        r.scale_w = {{"matrix", complex_matrix_to_json(b)}, {"scalar", c}};
      }

      const double wider = aperture + (1.0 - aperture) * rng.uniform(0.1, 0.9);
      const double narrower = aperture * rng.uniform(0.1, 0.9);
      if (member && !in_symmetric_cone(b, ConeParams(wider))) {
        r.mono_ok = false;
        r.mono_w = {{"matrix", complex_matrix_to_json(b)},
                    {"aperture", aperture},
                    {"wider", wider}};
      }
      if (!member && in_symmetric_cone(b, ConeParams(narrower))) {
        r.mono_ok = false;
        r.mono_w = {{"matrix", complex_matrix_to_json(b)},
                    {"aperture", aperture},
                    {"narrower", narrower}};
      }
    });

    double min_gram_margin = std::numeric_limits<double>::infinity();
    for (const Trial& r : results) {
      if (!r.quad_ok) quad.fail(r.quad_w);
      if (!r.gram_ok) gram.fail(r.gram_w);
      if (!r.scale_ok) scale.fail(r.scale_w);
      if (!r.mono_ok) mono.fail(r.mono_w);
      min_gram_margin = std::min(min_gram_margin, r.gram_margin);
    }
    gram.constants["min_margin"] = min_gram_margin;
    claims.push_back(quad);
    claims.push_back(gram);
    claims.push_back(scale);
    claims.push_back(mono);
  }
}

// ----------------------------------------------------------------- sqrt

void sqrt_suite(const RunConfig& cfg, const GroupSpec& spec,
                std::vector<Claim>& claims) {
  const int n = spec.n;
  for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
    const double delta = cfg.deltas[di];
    const double delta1 = 2.0 * n * delta;
    Claim eig, res, structure, invol;
    eig.id = "eigenvalue-cone";
    res.id = "sqrt-residual-positivity";
    structure.id = "sqrt-structure";
    invol.id = "sqrt-involution";
    for (Claim* c : {&eig, &res, &structure, &invol}) {
      c->parameters["delta"] = delta;
      c->parameters["group"] = spec.name;
      c->trials = cfg.trials;
    }
    eig.parameters["delta1"] = delta1;
    const bool eig_active = delta1 < 1.0;
    const double eps_cone =
        eig_active ? delta1 / std::sqrt(1.0 - delta1 * delta1) : 0.0;
    if (eig_active)
      eig.parameters["epsilon"] = eps_cone;
    else {
      eig.parameters["skipped"] = "delta1 >= 1";
      eig.trials = 0;
    }

    struct Trial {
      bool eig_ok = true, res_ok = true, struct_ok = true, invol_ok = true;
      double worst_eig_ratio = 0.0;
      double residual = 0.0;
      double min_re_eig = 0.0;
      double max_k = 0.0;
      double invol_err = 0.0;
      Json eig_w, res_w, struct_w, invol_w;
    };
    std::vector<Trial> results(cfg.trials);

    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(21, di, t));
      const TubeSample ts = sample_tube(spec, delta, cfg.radius, rng);
      const MatrixXcd b = ts.h * ts.h.transpose();

      if (eig_active) {
        for (const Complex& lambda : eigenvalues(b).values) {
          const double margin = right_margin_raw(lambda, eps_cone);
          if (lambda.real() > 0)
            r.worst_eig_ratio = std::max(
                r.worst_eig_ratio,
                std::abs(lambda.imag()) / (eps_cone * lambda.real()));
          if (!(margin > 0.0)) {
            r.eig_ok = false;
            r.eig_w = {{"matrix", complex_matrix_to_json(b)},
                       {"eigenvalue", {lambda.real(), lambda.imag()}},
                       {"epsilon", eps_cone}};
          }
        }
      }

      const SqrtReport sqrt_report = principal_sqrt(b);
      r.residual = sqrt_report.residual;
      r.min_re_eig = min_symmetric_eigenvalue(real_part(sqrt_report.S));
      if (!(r.residual <= 1e-10) || !(r.min_re_eig > 0.0)) {
        r.res_ok = false;
        r.res_w = {{"matrix", complex_matrix_to_json(b)},
                   {"residual", r.residual},
                   {"min_re_eig", r.min_re_eig}};
      }

      const SqrtReport sr = verify_sqrt_structure(b, ConeParams(delta));
      r.max_k = sr.max_K_entry;
      if (!sr.violations.empty()) {
        r.struct_ok = false;
        Json viols = Json::array();
        for (const std::string& v : sr.violations) viols.push_back(v);
        r.struct_w = {{"matrix", complex_matrix_to_json(b)},
                      {"violations", viols},
                      {"max_K_entry", sr.max_K_entry},
                      {"cone_margin", sr.cone_margin}};
      }

      const MatrixXcd s = sqrt_report.S;
      const MatrixXcd twice = principal_sqrt(s * s).S;
      r.invol_err = (twice - s).norm() / s.norm();
      if (!(r.invol_err <= 1e-8)) {
        r.invol_ok = false;
        r.invol_w = {{"matrix", complex_matrix_to_json(s)},
                     {"relative_error", r.invol_err}};
      }
    });

    double worst_ratio = 0.0, worst_res = 0.0, worst_k = 0.0, worst_invol = 0.0;
    double min_re = std::numeric_limits<double>::infinity();
    for (const Trial& r : results) {
      if (eig_active && !r.eig_ok) eig.fail(r.eig_w);
      if (!r.res_ok) res.fail(r.res_w);
      if (!r.struct_ok) structure.fail(r.struct_w);
      if (!r.invol_ok) invol.fail(r.invol_w);
      worst_ratio = std::max(worst_ratio, r.worst_eig_ratio);
      worst_res = std::max(worst_res, r.residual);
      worst_k = std::max(worst_k, r.max_k);
      worst_invol = std::max(worst_invol, r.invol_err);
      min_re = std::min(min_re, r.min_re_eig);
    }
    if (eig_active) eig.constants["max_abs_im_over_eps_re"] = worst_ratio;
    res.constants["max_residual"] = worst_res;
    res.constants["min_re_s_eigenvalue"] = min_re;
    structure.constants["max_K_entry_over_2delta"] = worst_k / (2.0 * delta);
    invol.constants["max_relative_error"] = worst_invol;
    claims.push_back(eig);
    claims.push_back(res);
    claims.push_back(structure);
    claims.push_back(invol);
  }
}

// ---------------------------------------------------------------- polar

void polar_suite(const RunConfig& cfg, const GroupSpec& spec,
                 std::vector<Claim>& claims) {
  std::vector<double> c_hats;
  std::vector<double> c_hat_deltas;
  for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
    const double delta = cfg.deltas[di];
    Claim recon, identity, bounds, functorial, holo, orth_dist;
    recon.id = "polar-reconstruction";
    identity.id = "orth-norm-identity";
    bounds.id = "orth-real-proximity-bounds";
    functorial.id = "polar-real-functoriality";
    holo.id = "psi-holomorphy";
    orth_dist.id = "orth-factor-distance";
    for (Claim* c : {&recon, &identity, &bounds, &functorial, &holo, &orth_dist}) {
      c->parameters["delta"] = delta;
      c->parameters["group"] = spec.name;
      c->trials = cfg.trials;
    }
    const int holo_trials = std::min(cfg.trials, 20);
    holo.trials = holo_trials;

    struct Trial {
      bool recon_ok = true, id_ok = true, bounds_ok = true, func_ok = true,
           holo_ok = true;
      double residual_sq = 0.0, residual_orth = 0.0, id_err = 0.0,
             holo_err = 0.0;
      Json recon_w, id_w, bounds_w, func_w, holo_w;
    };
    std::vector<Trial> results(cfg.trials);

    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(31, di, t));
      const TubeSample ts = sample_tube(spec, delta, cfg.radius, rng);
      const PolarFactors pf = complex_polar(ts.h);
      r.residual_sq = pf.residual_sq;
      r.residual_orth = pf.residual_orth;
      if (!(pf.residual_sq <= 1e-10) || !(pf.residual_orth <= 1e-10)) {
        r.recon_ok = false;
        r.recon_w = {{"matrix", complex_matrix_to_json(ts.h)},
                     {"residual_sq", pf.residual_sq},
                     {"residual_orth", pf.residual_orth}};
      }

      const double q0n = operator_norm(real_part(pf.Q));
      const double q1n = operator_norm(imag_part(pf.Q));
      r.id_err = std::abs(q0n * q0n - q1n * q1n - 1.0);
      if (!(r.id_err <= 1e-9)) {
        r.id_ok = false;
        r.id_w = {{"matrix", complex_matrix_to_json(pf.Q)},
                  {"identity_error", r.id_err}};
      }

      const double dprime = q1n / q0n;
      const double cap = 1.0 / std::sqrt(1.0 - dprime * dprime);
      if (!(q0n <= cap + 1e-9) || !(q1n <= dprime * cap + 1e-9)) {
        r.bounds_ok = false;
        r.bounds_w = {{"matrix", complex_matrix_to_json(pf.Q)},
                      {"q0_norm", q0n},
                      {"q1_norm", q1n},
                      {"delta_prime", dprime}};
      }

      const RealPolarFactors rp = real_polar(ts.g);
      const PolarFactors pg = complex_polar(ts.g.cast<Complex>());
      const double func_err =
          std::max((pg.Q - rp.U.cast<Complex>()).norm(),
                   (pg.S - rp.P.cast<Complex>()).norm() / (1.0 + rp.P.norm()));
      if (!(func_err <= 1e-9)) {
        r.func_ok = false;
        r.func_w = {{"matrix", complex_matrix_to_json(ts.g.cast<Complex>())},
                    {"deviation", func_err}};
      }

      if (t < holo_trials) {
        const double eps = 1e-5;
        const MatrixXcd e = rng.normal_matrix(spec.n, spec.n).cast<Complex>() /
                            std::sqrt(static_cast<double>(spec.n));
        const MatrixXcd d_re =
            (complex_polar(ts.h + eps * e).Q - complex_polar(ts.h - eps * e).Q) /
            (2.0 * eps);
        const MatrixXcd d_im =
            (complex_polar(ts.h + Complex(0, eps) * e).Q -
             complex_polar(ts.h - Complex(0, eps) * e).Q) /
            (2.0 * eps * Complex(0, 1));
        r.holo_err = (d_im - d_re).norm() / std::max(1.0, d_re.norm());
        if (!(r.holo_err <= 1e-7)) {
          r.holo_ok = false;
          r.holo_w = {{"matrix", complex_matrix_to_json(ts.h)},
                      {"cr_residual", r.holo_err}};
        }
      }
    });

    double worst_sq = 0.0, worst_orth = 0.0, worst_id = 0.0, worst_holo = 0.0;
    for (const Trial& r : results) {
      if (!r.recon_ok) recon.fail(r.recon_w);
      if (!r.id_ok) identity.fail(r.id_w);
      if (!r.bounds_ok) bounds.fail(r.bounds_w);
      if (!r.func_ok) functorial.fail(r.func_w);
      if (!r.holo_ok) holo.fail(r.holo_w);
      worst_sq = std::max(worst_sq, r.residual_sq);
      worst_orth = std::max(worst_orth, r.residual_orth);
      worst_id = std::max(worst_id, r.id_err);
      worst_holo = std::max(worst_holo, r.holo_err);
    }
    recon.constants["max_residual_sq"] = worst_sq;
    recon.constants["max_residual_orth"] = worst_orth;
    identity.constants["max_identity_error"] = worst_id;
    holo.constants["max_cr_residual"] = worst_holo;

    if (delta <= 0.05) {
      const OrthDistanceStats stats = image_orth_distance(
          spec, delta, cfg.trials, cfg.seed ^ 0x9e3779b97f4a7c15ULL,
          cfg.radius);
      orth_dist.constants["max_dist"] = stats.max_dist;
      orth_dist.constants["mean_dist"] = stats.mean_dist;
      orth_dist.constants["c_hat"] = stats.c_hat;
      if (!(stats.c_hat <= 10.0))
        orth_dist.fail({{"c_hat", stats.c_hat}, {"delta", delta}});
      c_hats.push_back(stats.c_hat);
      c_hat_deltas.push_back(delta);
    } else {
      orth_dist.parameters["skipped"] = "delta > 0.05";
      orth_dist.trials = 0;
    }

    claims.push_back(recon);
    claims.push_back(identity);
    claims.push_back(bounds);
    claims.push_back(functorial);
    claims.push_back(holo);
    claims.push_back(orth_dist);
  }

  Claim stability;
  stability.id = "orth-distance-stability";
  stability.parameters["group"] = spec.name;
  stability.parameters["deltas"] = c_hat_deltas;
  stability.trials = static_cast<int>(c_hats.size());
  if (c_hats.size() >= 2) {
    const double lo = *std::min_element(c_hats.begin(), c_hats.end());
    const double hi = *std::max_element(c_hats.begin(), c_hats.end());
    stability.constants["c_hats"] = c_hats;
    stability.constants["spread"] = lo > 0 ? hi / lo : 0.0;
    if (!(lo > 0.0) || !(hi / lo < 2.0))
      stability.fail({{"c_hats", c_hats}});
  } else {
    stability.parameters["skipped"] = "needs at least two deltas <= 0.05";
  }
  claims.push_back(stability);
}

// --------------------------------------------------------------- action

void action_suite(const RunConfig& cfg, const GroupSpec& spec,
                  std::vector<Claim>& claims) {
  const int n = spec.n;

  {
    Claim comp;
    comp.id = "action-composition";
    comp.parameters["group"] = spec.name;
    comp.trials = cfg.trials;
    struct Trial {
      bool ok = true;
      double err = 0.0;
      Json w;
    };
    std::vector<Trial> results(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(41, 0, t));
      const MatrixXd g1 = sample_group(spec, cfg.radius, rng);
      const MatrixXd g2 = sample_group(spec, cfg.radius, rng);
      SiegelPoint pt;
      const MatrixXd q = rng.normal_matrix(n, n);
      pt.z1 = (q * q.transpose() + MatrixXd::Identity(n, n)).cast<Complex>() +
              Complex(0, 1) * (0.1 * rng.symmetric_matrix(n)).cast<Complex>();
      pt.z2 = (q * q.transpose() + 2.0 * MatrixXd::Identity(n, n)).cast<Complex>() +
              Complex(0, 1) * (0.1 * rng.symmetric_matrix(n)).cast<Complex>();
      const SiegelPoint two_step = siegel_act(g1, siegel_act(g2, pt));
      const SiegelPoint one_step = siegel_act(g1 * g2, pt);
      const double err =
          std::max((two_step.z1 - one_step.z1).norm() / one_step.z1.norm(),
                   (two_step.z2 - one_step.z2).norm() / one_step.z2.norm());
      r.err = err;
      if (!(err <= 1e-10)) {
        r.ok = false;
        r.w = {{"g1", complex_matrix_to_json(g1.cast<Complex>())},
               {"g2", complex_matrix_to_json(g2.cast<Complex>())},
               {"error", err}};
      }
    });
    double worst = 0.0;
    for (const Trial& r : results) {
      if (!r.ok) comp.fail(r.w);
      worst = std::max(worst, r.err);
    }
    comp.constants["max_error"] = worst;
    claims.push_back(comp);
  }

  {
    Claim generic;
    generic.id = "tangent-kernel-generic";
    generic.parameters["group"] = spec.name;
    const int points = std::min(cfg.trials, 20);
    generic.trials = points;
    int max_resamples = 0;
    for (int t = 0; t < points; ++t) {
      try {
        const GenericPoint gp =
            sample_generic_point(spec, cfg.seed + 1000003ULL * (t + 1));
        max_resamples = std::max(max_resamples, gp.resamples);
        const TangentRank tr = tangent_map_rank(spec, gp.pt);
        const int defect = totally_real_defect(spec, gp.pt);
        if (tr.kernel_dim != 0 || defect != 0)
          generic.fail({{"kernel_dim", tr.kernel_dim},
                        {"defect", defect},
                        {"z1", complex_matrix_to_json(gp.pt.z1)},
                        {"z2", complex_matrix_to_json(gp.pt.z2)}});
      } catch (const NumericError& e) {
        generic.fail({{"error", e.what()}});
      }
    }
    generic.constants["max_resamples"] = max_resamples;
    claims.push_back(generic);
  }

  {
    Claim degenerate;
    degenerate.id = "degenerate-point-kernel";
    degenerate.parameters["group"] = spec.name;
    if (spec.family == GroupFamily::SO_n) {
      degenerate.trials = 1;
      SiegelPoint pt;
      pt.z1 = MatrixXcd::Identity(n, n);
      pt.z2 = MatrixXcd::Identity(n, n);
      const TangentRank tr = tangent_map_rank(spec, pt);
      const int defect = totally_real_defect(spec, pt);
      degenerate.constants["kernel_dim"] = tr.kernel_dim;
      degenerate.constants["defect"] = defect;
      if (tr.kernel_dim != spec.dim() || defect <= 0)
        degenerate.fail({{"kernel_dim", tr.kernel_dim}, {"defect", defect}});
    } else {
      degenerate.parameters["skipped"] = "defined for so:n";
    }
    claims.push_back(degenerate);
  }

  {
    Claim transpose_claim, closure;
    transpose_claim.id = "transpose-stability";
    closure.id = "polar-factor-closure";
    transpose_claim.parameters["group"] = spec.name;
    closure.parameters["group"] = spec.name;
    transpose_claim.trials = cfg.trials;
    closure.trials = cfg.trials;
    struct Trial {
      bool t_ok = true, c_ok = true;
      double t_res = 0.0, c_res = 0.0;
      Json t_w, c_w;
    };
    std::vector<Trial> results(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(42, 0, t));
      const MatrixXd g = sample_group(spec, cfg.radius, rng);
      r.t_res = defining_residual(spec, MatrixXd(g.transpose()));
      if (!(r.t_res <= 1e-9)) {
        r.t_ok = false;
        r.t_w = {{"matrix", complex_matrix_to_json(g.cast<Complex>())},
                 {"transpose_residual", r.t_res}};
      }
      try {
        const GroupPolarFactors gp = group_polar(spec, g);
        r.c_res = std::max(gp.p_residual, gp.k_residual);
      } catch (const Error& e) {
        r.c_ok = false;
        r.c_w = {{"matrix", complex_matrix_to_json(g.cast<Complex>())},
                 {"error", e.what()}};
      }
    });
    double worst_t = 0.0, worst_c = 0.0;
    for (const Trial& r : results) {
      if (!r.t_ok) transpose_claim.fail(r.t_w);
      if (!r.c_ok) closure.fail(r.c_w);
      worst_t = std::max(worst_t, r.t_res);
      worst_c = std::max(worst_c, r.c_res);
    }
    transpose_claim.constants["max_residual"] = worst_t;
    closure.constants["max_factor_residual"] = worst_c;
    claims.push_back(transpose_claim);
    claims.push_back(closure);
  }

  for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
    const double delta = cfg.deltas[di];
    Claim vec_cone, prod_cone, orth_inv;
    vec_cone.id = "tube-vector-cone";
    prod_cone.id = "near-identity-product-cone";
    orth_inv.id = "orthogonal-invariance";
    for (Claim* c : {&vec_cone, &prod_cone, &orth_inv}) {
      c->parameters["delta"] = delta;
      c->parameters["group"] = spec.name;
      c->trials = cfg.trials;
    }
    vec_cone.parameters["aperture_factor"] = 2.0;
    prod_cone.parameters["aperture_factor"] = 3.0;

    struct Trial {
      bool v_ok = true, p_ok = true, o_ok = true;
      Json v_w, p_w, o_w;
    };
    std::vector<Trial> results(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(43, di, t));
      const TubeSample ts = sample_tube(spec, delta, cfg.radius, rng);
      const ConeParams v_params(2.0 * delta);
      for (int k = 0; k < 100; ++k) {
        const VectorXd x = rng.unit_vector(n);
        const VectorXcd hx = ts.h.transpose() * x.cast<Complex>();
        if (!in_vector_cone(hx, v_params)) {
          r.v_ok = false;
          r.v_w = {{"matrix", complex_matrix_to_json(ts.h)},
                   {"margin", vector_cone_margin(hx, v_params)}};
          break;
        }
      }

      const MatrixXcd a = random_matrix_in_cone(rng, n, delta);
      MatrixXcd near_id = rng.normal_matrix(n, n).cast<Complex>() +
                          Complex(0, 1) * rng.normal_matrix(n, n).cast<Complex>();
      near_id *= 0.9 * delta * rng.uniform(0.1, 1.0) / operator_norm(near_id);
      near_id += MatrixXcd::Identity(n, n);
      for (const MatrixXcd& prod : {MatrixXcd(a * near_id), MatrixXcd(near_id * a)}) {
        if (!in_matrix_cone_raw(prod, 3.0 * delta)) {
          r.p_ok = false;
          r.p_w = {{"a", complex_matrix_to_json(a)},
                   {"b", complex_matrix_to_json(near_id)}};
        }
      }

      const GroupSpec rot = make_group(GroupFamily::SO_n, n);
      const MatrixXd w = sample_group(rot, cfg.radius, rng);
      const double im_norm = operator_norm(imag_part(a));
      const double re_norm = operator_norm(real_part(a));
      for (const MatrixXcd& prod :
           {MatrixXcd(a * w.cast<Complex>()), MatrixXcd(w.cast<Complex>() * a)}) {
        const double im_err =
            std::abs(operator_norm(imag_part(prod)) - im_norm);
        const double re_err =
            std::abs(operator_norm(real_part(prod)) - re_norm);
        if (im_err > 1e-12 * std::max(1.0, im_norm) ||
            re_err > 1e-12 * std::max(1.0, re_norm) ||
            !in_matrix_cone(prod, ConeParams(delta))) {
          r.o_ok = false;
          r.o_w = {{"a", complex_matrix_to_json(a)},
                   {"rotation", complex_matrix_to_json(w.cast<Complex>())},
                   {"im_norm_error", im_err},
                   {"re_norm_error", re_err}};
        }
      }
    });
    for (const Trial& r : results) {
      if (!r.v_ok) vec_cone.fail(r.v_w);
      if (!r.p_ok) prod_cone.fail(r.p_w);
      if (!r.o_ok) orth_inv.fail(r.o_w);
    }
    claims.push_back(vec_cone);
    claims.push_back(prod_cone);
    claims.push_back(orth_inv);
  }

  {
    Claim minus_id;
    minus_id.id = "minus-identity-excluded";
    minus_id.parameters["group"] = spec.name;
    if (n % 2 == 1) {
      minus_id.trials = 1;
      const double residual =
          defining_residual(spec, MatrixXd(-MatrixXd::Identity(n, n)));
      const bool excluded =
          !(residual <= 1e-9) || !std::isfinite(residual);
      minus_id.constants["residual_is_finite"] = std::isfinite(residual);
      if (std::isfinite(residual)) minus_id.constants["residual"] = residual;
      if (!excluded) minus_id.fail({{"residual", residual}});
    } else {
      minus_id.parameters["skipped"] = "n is even";
    }
    claims.push_back(minus_id);
  }
}

// ---------------------------------------------------------------- cover

std::vector<std::int64_t> minor_gcd_chain(const IntMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const int steps = std::min(rows, cols);
  std::vector<std::int64_t> out(steps, 0);
  std::int64_t prev = 1;
  for (int size = 1; size <= steps; ++size) {
    std::int64_t g = 0;
    std::vector<int> rsel(size), csel(size);
    for (int i = 0; i < size; ++i) rsel[i] = i;
    while (true) {
      for (int i = 0; i < size; ++i) csel[i] = i;
      while (true) {
        IntMatrix sub(size, size);
        for (int i = 0; i < size; ++i)
          for (int j = 0; j < size; ++j) sub(i, j) = m(rsel[i], csel[j]);
        g = std::gcd(g, integer_det(sub));
        int j = size - 1;
        while (j >= 0 && csel[j] == cols - size + j) --j;
        if (j < 0) break;
        ++csel[j];
        for (int i = j + 1; i < size; ++i) csel[i] = csel[i - 1] + 1;
      }
      int i = size - 1;
      while (i >= 0 && rsel[i] == rows - size + i) --i;
      if (i < 0) break;
      ++rsel[i];
      for (int k = i + 1; k < size; ++k) rsel[k] = rsel[k - 1] + 1;
    }
    g = std::abs(g);
    out[size - 1] = (g == 0 || prev == 0) ? 0 : g / prev;
    prev = g;
  }
  return out;
}

CoverElement random_cover_element(RandomStream& rng) {
  MatrixXd sym(2, 2);
  const double a = 0.8 * rng.normal();
  const double b = 0.8 * rng.normal();
  sym << a, b, b, -a;
  const MatrixXd g = MatrixXd(sym.exp()) * rotation2(rng.uniform(-kPi, kPi));
  const double x =
      canonical_lift(g) + 2.0 * kPi * static_cast<double>(rng.uniform_int(-2, 2));
  return make_cover_element(g, x);
}

void cover_suite(const RunConfig& cfg, std::vector<Claim>& claims) {
  {
    Claim winding;
    winding.id = "winding-rotation-loops";
    winding.trials = 5;
    for (int k = -2; k <= 2; ++k) {
      const int samples = 64 * std::max(1, std::abs(k)) + 1;
      std::vector<MatrixXd> loop;
      loop.reserve(samples);
      for (int j = 0; j < samples; ++j)
        loop.push_back(rotation2(2.0 * kPi * k * j / samples));
      int got = winding_number(loop, true);
      if (got != k) winding.fail({{"expected", k}, {"got", got}});
    }
    claims.push_back(winding);
  }

  {
    Claim conj;
    conj.id = "winding-conjugation-refinement";
    conj.trials = 3;
    MatrixXd a(2, 2);
    a << 2.0, 0.0, 0.0, 0.5;
    const MatrixXd a_inv = a.inverse();
    for (const int samples : {129, 1290}) {
      std::vector<MatrixXd> loop;
      loop.reserve(samples);
      for (int j = 0; j < samples; ++j)
        loop.push_back(a * rotation2(2.0 * kPi * j / samples) * a_inv);
      const int got = winding_number(loop, true);
      if (got != 1) conj.fail({{"samples", samples}, {"got", got}});
    }
    MatrixXd x(2, 2);
    x << 1.0, 0.0, 0.0, -1.0;
    std::vector<MatrixXd> contractible;
    for (int j = 0; j <= 128; ++j) {
      const double t = static_cast<double>(j) / 128.0;
      contractible.push_back(MatrixXd((t * (1.0 - t) * x).exp()));
    }
    const int got = winding_number(contractible, true);
    if (got != 0) conj.fail({{"loop", "contractible"}, {"got", got}});
    claims.push_back(conj);
  }

  {
    Claim lift;
    lift.id = "lift-endpoint";
    lift.trials = 2;
    for (const int loops : {1, 2}) {
      CirclePath path;
      path.closed = true;
      const int samples = 100 * loops + 1;
      for (int j = 0; j < samples; ++j) {
        VectorXd x(1);
        x(0) = 2.0 * kPi * loops * j / (samples - 1);
        path.samples.push_back(torus_point(x));
      }
      const auto lifted = lift_path(path, VectorXd::Zero(1));
      const double end = lifted.back()(0);
      if (std::abs(end - 2.0 * kPi * loops) > 1e-9)
        lift.fail({{"loops", loops}, {"endpoint", end}});
    }
    claims.push_back(lift);
  }

  {
    Claim assoc, deck, kernel;
    assoc.id = "cover-associativity";
    deck.id = "deck-shift-centrality";
    kernel.id = "deck-kernel";
    assoc.trials = cfg.trials;
    deck.trials = cfg.trials;

    struct Trial {
      bool a_ok = true, d_ok = true;
      double a_err = 0.0;
      Json a_w, d_w;
    };
    std::vector<Trial> results(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(51, 0, t));
      const CoverElement a = random_cover_element(rng);
      const CoverElement b = random_cover_element(rng);
      const CoverElement c = random_cover_element(rng);
      const CoverElement left = cover_multiply(cover_multiply(a, b), c);
      const CoverElement right = cover_multiply(a, cover_multiply(b, c));
      r.a_err = std::abs(left.x - right.x);
      if (r.a_err > 1e-9 || (left.g - right.g).norm() > 1e-9) {
        r.a_ok = false;
        r.a_w = {{"x_left", left.x}, {"x_right", right.x}};
      }

      const CoverElement ab = cover_multiply(a, b);
      CoverElement a_up = a;
      a_up.x += 2.0 * kPi;
      CoverElement b_up = b;
      b_up.x += 2.0 * kPi;
      const CoverElement left_shift = cover_multiply(a_up, b);
      const CoverElement right_shift = cover_multiply(a, b_up);
      if (std::abs(left_shift.x - ab.x - 2.0 * kPi) > 1e-9 ||
          std::abs(right_shift.x - ab.x - 2.0 * kPi) > 1e-9) {
        r.d_ok = false;
        r.d_w = {{"base_x", ab.x},
                 {"left_shift_x", left_shift.x},
                 {"right_shift_x", right_shift.x}};
      }
    });
    double worst_assoc = 0.0;
    for (const Trial& r : results) {
      if (!r.a_ok) assoc.fail(r.a_w);
      if (!r.d_ok) deck.fail(r.d_w);
      worst_assoc = std::max(worst_assoc, r.a_err);
    }
    assoc.constants["max_x_mismatch"] = worst_assoc;

    kernel.trials = 10;
    RandomStream krng(cfg.seed, substream(52, 0, 0));
    for (int t = 0; t < 9; ++t) {
      const auto ka = krng.uniform_int(-3, 3);
      const auto kb = krng.uniform_int(-3, 3);
      const CoverElement ea{MatrixXd::Identity(2, 2), 2.0 * kPi * ka};
      const CoverElement eb{MatrixXd::Identity(2, 2), 2.0 * kPi * kb};
      const CoverElement prod = cover_multiply(ea, eb);
      if (std::abs(prod.x - 2.0 * kPi * (ka + kb)) > 1e-9 ||
          (prod.g - MatrixXd::Identity(2, 2)).norm() > 1e-12)
        kernel.fail({{"ka", ka}, {"kb", kb}, {"x", prod.x}});
    }
    const CoverElement half{rotation2(kPi), kPi};
    const CoverElement full = cover_multiply(half, half);
    if (std::abs(full.x - 2.0 * kPi) > 1e-9 ||
        (full.g - MatrixXd::Identity(2, 2)).norm() > 1e-9)
      kernel.fail({{"case", "half-turn squared"}, {"x", full.x}});
    claims.push_back(assoc);
    claims.push_back(deck);
    claims.push_back(kernel);
  }

  {
    Claim pullback;
    pullback.id = "pullback-separation";
    pullback.trials = cfg.trials + 3;
    VectorXcd one(1);
    one(0) = Complex(1, 0);
    VectorXd w(1);
    w(0) = 0.0;
    if (!pullback_member(one, w, 1e-9)) pullback.fail({{"case", "zero"}});
    w(0) = 2.0 * kPi;
    if (!pullback_member(one, w, 1e-9)) pullback.fail({{"case", "2pi"}});
    w(0) = kPi;
    if (pullback_member(one, w, 1e-9)) pullback.fail({{"case", "pi"}});

    RandomStream rng(cfg.seed, substream(53, 0, 0));
    for (int t = 0; t < cfg.trials; ++t) {
      const double phi = rng.uniform(-kPi, kPi);
      CirclePath path;
      const int samples = 64;
      for (int j = 0; j < samples; ++j) {
        VectorXd x(1);
        x(0) = phi * j / (samples - 1);
        path.samples.push_back(torus_point(x));
      }
      const auto lifted = lift_path(path, VectorXd::Zero(1));
      const double end = lifted.back()(0);
      VectorXcd target(1);
      target(0) = Complex(std::cos(phi), std::sin(phi));
      VectorXd probe(1);
      probe(0) = end;
      bool ok = std::abs(end - phi) <= 1e-9 &&
                pullback_member(target, probe, 1e-6);
      probe(0) = end + 2.0 * kPi;
      ok = ok && pullback_member(target, probe, 1e-6);
      probe(0) = end + kPi;
      ok = ok && !pullback_member(target, probe, 1e-6);
      if (!ok) pullback.fail({{"phi", phi}, {"endpoint", end}});
    }
    claims.push_back(pullback);
  }

  {
    Claim snf_claim, split, extend;
    snf_claim.id = "snf-invariants";
    split.id = "abelian-split";
    extend.id = "lattice-basis-extension";
    snf_claim.trials = cfg.trials;
    split.trials = cfg.trials + 3;
    extend.trials = cfg.trials + 3;

    struct Trial {
      bool s_ok = true, sp_ok = true, e_ok = true;
      Json s_w, sp_w, e_w;
    };
    std::vector<Trial> results(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
      Trial& r = results[t];
      RandomStream rng(cfg.seed, substream(54, 0, t));
      const int rows = static_cast<int>(rng.uniform_int(1, 5));
      const int cols = static_cast<int>(rng.uniform_int(1, 5));
      IntMatrix m(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform_int(-9, 9);

      const SNFResult snf = smith_normal_form(m);
      const std::vector<std::int64_t> oracle = minor_gcd_chain(m);
      const int steps = std::min(rows, cols);
      bool ok = std::abs(integer_det(snf.U)) == 1 &&
                std::abs(integer_det(snf.V)) == 1;
      for (int i = 0; i < steps && ok; ++i) {
        const std::int64_t d = snf.D(i, i);
        if (d < 0 || d != oracle[i]) ok = false;
        if (i + 1 < steps) {
          const std::int64_t next = snf.D(i + 1, i + 1);
          if (d == 0 && next != 0) ok = false;
          if (d != 0 && next % d != 0) ok = false;
        }
      }
      for (int i = 0; i < rows && ok; ++i)
        for (int j = 0; j < cols; ++j)
          if (i != j && snf.D(i, j) != 0) {
            ok = false;
            break;
          }
      if (!ok) {
        r.s_ok = false;
        r.s_w = {{"matrix", integer_matrix_to_json(m)},
                 {"d", integer_matrix_to_json(snf.D)}};
      }

      const AbelianSplit sp = split_abelian(m);
      int nonzero = 0;
      for (int i = 0; i < steps; ++i)
        if (snf.D(i, i) != 0) ++nonzero;
      if (sp.free_rank != rows - nonzero) {
        r.sp_ok = false;
        r.sp_w = {{"matrix", integer_matrix_to_json(m)},
                  {"free_rank", sp.free_rank}};
      }

      const int k = 4;
      IntMatrix seed_mat(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) seed_mat(i, j) = rng.uniform_int(-9, 9);
      const IntMatrix uni = smith_normal_form(seed_mat).U_inv;
      const int span = static_cast<int>(rng.uniform_int(1, k));
      const IntMatrix c = uni.leftCols(span);
      try {
        const IntMatrix basis = extend_lattice_basis(c);
        const bool good = std::abs(integer_det(basis)) == 1 &&
                          same_lattice(basis.leftCols(span), c);
        if (!good) {
          r.e_ok = false;
          r.e_w = {{"generators", integer_matrix_to_json(c)},
                   {"basis", integer_matrix_to_json(basis)}};
        }
      } catch (const Error& e) {
        r.e_ok = false;
        r.e_w = {{"generators", integer_matrix_to_json(c)},
                 {"error", e.what()}};
      }
    });
    for (const Trial& r : results) {
      if (!r.s_ok) snf_claim.fail(r.s_w);
      if (!r.sp_ok) split.fail(r.sp_w);
      if (!r.e_ok) extend.fail(r.e_w);
    }

    {
      IntMatrix zero_rel(2, 1);
      zero_rel.setZero();
      const AbelianSplit sp = split_abelian(zero_rel);
      if (!sp.torsion_invariants.empty() || sp.free_rank != 2)
        split.fail({{"case", "zero relations"}});
      IntMatrix diag_rel(2, 2);
      diag_rel << 2, 0, 0, 0;
      const AbelianSplit sp2 = split_abelian(diag_rel);
      if (sp2.torsion_invariants != std::vector<std::int64_t>{2} ||
          sp2.free_rank != 1)
        split.fail({{"case", "diag(2,0)"}});
      IntMatrix rel(2, 2);
      rel << 2, 4, 6, 8;
      const AbelianSplit sp3 = split_abelian(rel);
      if (sp3.torsion_invariants != std::vector<std::int64_t>({2, 4}) ||
          sp3.free_rank != 0)
        split.fail({{"case", "[[2,4],[6,8]]"}});
    }
    {
      IntMatrix c(2, 1);
      c << 1, 0;
      const IntMatrix basis = extend_lattice_basis(c);
      if (std::abs(integer_det(basis)) != 1 ||
          !same_lattice(basis.leftCols(1), c))
        extend.fail({{"case", "e1"}});
      IntMatrix c2(2, 1);
      c2 << 2, 0;
      bool threw = false;
      try {
        extend_lattice_basis(c2);
      } catch (const DomainError&) {
        threw = true;
      }
      if (!threw) extend.fail({{"case", "2e1 must report torsion"}});
      IntMatrix c3(2, 1);
      c3 << 1, 2;
      const IntMatrix basis3 = extend_lattice_basis(c3);
      if (std::abs(integer_det(basis3)) != 1 ||
          !same_lattice(basis3.leftCols(1), c3))
        extend.fail({{"case", "(1,2)"}});
    }
    claims.push_back(snf_claim);
    claims.push_back(split);
    claims.push_back(extend);
  }
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "cones") return Suite::Cones;
  if (name == "sqrt") return Suite::Sqrt;
  if (name == "polar") return Suite::Polar;
  if (name == "action") return Suite::Action;
  if (name == "cover") return Suite::Cover;
  if (name == "all") return Suite::All;
  throw InvalidInputError("unknown suite '" + name +
                          "' (expected cones, sqrt, polar, action, cover, all)");
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::Cones: return "cones";
    case Suite::Sqrt: return "sqrt";
    case Suite::Polar: return "polar";
    case Suite::Action: return "action";
    case Suite::Cover: return "cover";
    case Suite::All: return "all";
  }
  return "all";
}

void RunConfig::validate() {
  if (trials < 1) throw InvalidInputError("config: trials must be >= 1");
  if (deltas.empty()) throw InvalidInputError("config: need at least one delta");
  for (double d : deltas)
    if (!(d > 0.0) || d > 0.1)
      throw InvalidInputError("config: delta must lie in (0, 0.1]");
  if (!(tol > 0.0)) throw InvalidInputError("config: tol must be positive");
  if (!(radius >= 0.0) || radius > 2.0)
    throw InvalidInputError("config: radius must lie in [0, 2]");
  if (group.find(':') == std::string::npos)
    group += ":" + std::to_string(n > 0 ? n : 3);
  n = parse_group(group).n;
}

Report run_suite(const RunConfig& config) {
  RunConfig cfg = config;
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const GroupSpec spec = parse_group(cfg.group);

  std::vector<Claim> claims;
  const auto run_one = [&](Suite s) {
    switch (s) {
      case Suite::Cones: cones_suite(cfg, spec, claims); break;
      case Suite::Sqrt: sqrt_suite(cfg, spec, claims); break;
      case Suite::Polar: polar_suite(cfg, spec, claims); break;
      case Suite::Action: action_suite(cfg, spec, claims); break;
      case Suite::Cover: cover_suite(cfg, claims); break;
      case Suite::All: break;
    }
  };
  if (cfg.suite == Suite::All) {
    for (Suite s : {Suite::Cones, Suite::Sqrt, Suite::Polar, Suite::Action,
                    Suite::Cover})
      run_one(s);
  } else {
    run_one(cfg.suite);
  }

  Report report;
  report.failures = total_failures(claims);
  Json j;
  j["schema"] = 1;
  j["mode"] = "verify";
  j["suite"] = suite_name(cfg.suite);
  Json cj;
  cj["group"] = cfg.group;
  cj["n"] = cfg.n;
  cj["deltas"] = cfg.deltas;
  cj["trials"] = cfg.trials;
  cj["seed"] = cfg.seed;
  cj["tol"] = cfg.tol;
  cj["radius"] = cfg.radius;
  j["config"] = cj;
  j["claims"] = claims_to_json(claims);
  j["failures_total"] = report.failures;
  const auto t1 = std::chrono::steady_clock::now();
  j["wall_time_seconds"] =
      std::chrono::duration<double>(t1 - t0).count();
  report.json = j;
  if (!cfg.out.empty()) write_json_file(cfg.out, report.json);
  return report;
}

// -------------------------------------------------------- counterexamples

const std::vector<std::string> kCounterexampleClaims = {
    "B2-not-psd", "hx-not-in-V", "hhTx-not-in-V", "hTh-not-in-Mplus",
    "product-not-in-M"};

namespace {

struct Candidate {
  bool valid = false;
  Json witness;
};

// Re B = diag(1, M), Im B antidiagonal(a, a) with a = 0.9 delta sqrt(M)
// lies in the symmetric cone while Re(B^2) = diag(1 - a^2, M^2 - a^2)
// goes indefinite once M > 1/(0.81 delta^2).
Candidate b2_candidate(const MatrixXcd& b, double delta) {
  Candidate out;
  const double member_margin = symmetric_cone_margin(b, ConeParams(delta));
  if (!(member_margin > 0.0)) return out;
  const MatrixXcd b2 = b * b;
  const double min_eig = min_symmetric_eigenvalue(real_part(b2));
  if (!(min_eig < 0.0)) return out;
  out.valid = true;
  out.witness = {{"B", complex_matrix_to_json(b)},
                 {"delta", delta},
                 {"cone_margin", member_margin},
                 {"re_B2_min_eig", min_eig}};
  return out;
}

Candidate product_candidate(const MatrixXcd& a, const MatrixXcd& b,
                            double delta) {
  Candidate out;
  const ConeParams params(delta);
  if (!in_matrix_cone(a, params) || !in_matrix_cone(b, params)) return out;
  const MatrixXcd ab = a * b;
  const MatrixXcd ba = b * a;
  const double m_ab = matrix_cone_margin(ab, params);
  const double m_ba = matrix_cone_margin(ba, params);
  if (!(m_ab < 0.0) && !(m_ba < 0.0)) return out;
  out.valid = true;
  out.witness = {{"A", complex_matrix_to_json(a)},
                 {"B", complex_matrix_to_json(b)},
                 {"delta", delta},
                 {"product", m_ab < 0.0 ? "AB" : "BA"},
                 {"product_margin", std::min(m_ab, m_ba)}};
  return out;
}

Candidate hx_candidate(const MatrixXd& g, const MatrixXcd& p, const VectorXd& x,
                       double delta, const std::string& claim) {
  Candidate out;
  const double p_dist =
      operator_norm(MatrixXcd(p - MatrixXcd::Identity(p.rows(), p.cols())));
  if (!(p_dist < delta)) return out;
  const MatrixXcd h = g.cast<Complex>() * p;
  const double aperture = 10.0 * delta;
  Json extra;
  double margin = 0.0;
  if (claim == "hx-not-in-V") {
    const VectorXcd hx = h * x.cast<Complex>();
    margin = vector_margin_raw(hx, aperture);
    extra["vector"] = complex_matrix_to_json(hx);
  } else if (claim == "hhTx-not-in-V") {
    const VectorXcd v = (h * h.transpose()) * x.cast<Complex>();
    margin = vector_margin_raw(v, aperture);
    extra["vector"] = complex_matrix_to_json(v);
  } else {
    const MatrixXcd hth = h.transpose() * h;
    margin = symmetric_cone_margin_raw(hth, aperture);
    extra["hTh"] = complex_matrix_to_json(hth);
  }
  if (!(margin < 0.0)) return out;
  out.valid = true;
  out.witness = {{"h", complex_matrix_to_json(h)},
                 {"g", complex_matrix_to_json(g.cast<Complex>())},
                 {"p", complex_matrix_to_json(p)},
                 {"x", complex_matrix_to_json(x.cast<Complex>())},
                 {"delta", delta},
                 {"p_distance", p_dist},
                 {"aperture", aperture},
                 {"margin", margin}};
  for (auto& [key, value] : extra.items()) out.witness[key] = value;
  return out;
}

Candidate targeted_candidate(const std::string& claim, double delta) {
  if (claim == "B2-not-psd") {
    const double m = std::ceil(1.2 / (0.81 * delta * delta)) + 1.0;
    const double a = 0.9 * delta * std::sqrt(m);
    MatrixXcd b(2, 2);
    b << Complex(1, 0), Complex(0, a), Complex(0, a), Complex(m, 0);
    return b2_candidate(b, delta);
  }
  if (claim == "product-not-in-M") {
    MatrixXcd a(2, 2), b(2, 2);
    a << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0.5, 0.9 * delta);
    b << Complex(0.5, 0.9 * delta), Complex(0, 0), Complex(0, 0), Complex(1, 0);
    return product_candidate(a, b, delta);
  }
  const double level = 4.0;
  MatrixXd g = MatrixXd::Identity(3, 3);
  g(0, 0) = 1.0 / level;
  g(1, 1) = level;
  MatrixXcd zeta = MatrixXcd::Zero(3, 3);
  zeta(1, 0) = Complex(0, 0.9 * delta);
  const MatrixXcd p = MatrixXcd::Identity(3, 3) + zeta;
  VectorXd x = VectorXd::Zero(3);
  x(0) = 1.0;
  return hx_candidate(g, p, x, delta, claim);
}

Candidate random_candidate(const std::string& claim, double delta,
                           RandomStream& rng) {
  if (claim == "B2-not-psd") {
    MatrixXcd b = random_symmetric_complex(rng, 2, delta);
    return b2_candidate(b, delta);
  }
  if (claim == "product-not-in-M") {
    const MatrixXcd a = random_matrix_in_cone(rng, 2, delta);
    const MatrixXcd b = random_matrix_in_cone(rng, 2, delta);
    return product_candidate(a, b, delta);
  }
  const GroupSpec spec = make_group(GroupFamily::GLplus, 3);
  const double tube_delta = std::min(delta, 0.1);
  const TubeSample ts = sample_tube(spec, tube_delta, 1.5, rng);
  const VectorXd x = rng.unit_vector(3);
  return hx_candidate(ts.g, ts.p, x, delta, claim);
}

}  // namespace

Report find_counterexample(const std::string& claim,
                           const std::vector<double>& deltas, long budget,
                           std::uint64_t seed) {
  if (std::find(kCounterexampleClaims.begin(), kCounterexampleClaims.end(),
                claim) == kCounterexampleClaims.end()) {
    std::string known;
    for (const std::string& c : kCounterexampleClaims) known += " " + c;
    throw InvalidInputError("unknown claim '" + claim + "' (expected:" + known +
                            ")");
  }
  if (budget < 1) throw InvalidInputError("counterexample: budget must be >= 1");
  if (deltas.empty())
    throw InvalidInputError("counterexample: need at least one delta");
  for (double d : deltas)
    if (!(d > 0.0) || !(d < 0.5))
      throw InvalidInputError("counterexample: delta must lie in (0, 0.5)");

  const auto t0 = std::chrono::steady_clock::now();
  Json j;
  j["schema"] = 1;
  j["mode"] = "counterexample";
  j["claim"] = claim;
  j["deltas"] = deltas;
  j["budget"] = budget;
  j["seed"] = seed;

  bool found = false;
  long attempts = 0;
  for (std::size_t di = 0; di < deltas.size() && !found; ++di) {
    const double delta = deltas[di];
    ++attempts;
    Candidate cand = targeted_candidate(claim, delta);
    if (cand.valid) {
      cand.witness["source"] = "targeted-family";
      found = true;
      j["found"] = true;
      j["delta_used"] = delta;
      j["attempts"] = attempts;
      j["witness"] = cand.witness;
      break;
    }
    RandomStream rng(seed, substream(61, di, 0));
    for (long k = 0; k < budget && attempts < budget; ++k) {
      ++attempts;
      cand = random_candidate(claim, delta, rng);
      if (cand.valid) {
        cand.witness["source"] = "random-search";
        found = true;
        j["found"] = true;
        j["delta_used"] = delta;
        j["attempts"] = attempts;
        j["witness"] = cand.witness;
        break;
      }
    }
  }
  if (!found) {
    j["found"] = false;
    j["attempts"] = attempts;
  }
  const auto t1 = std::chrono::steady_clock::now();
  j["wall_time_seconds"] = std::chrono::duration<double>(t1 - t0).count();

  Report report;
  report.json = j;
  report.failures = found ? 0 : 1;
  return report;
}

}  // namespace holo
