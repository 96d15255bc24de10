// Command-line front end: builds covers, certifies uniformity, evaluates
// norms, extends functions, and runs the singular-integral harnesses.
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "fracspace/json_io.hpp"
#include "fracspace/svg.hpp"

namespace fs = fracspace;

namespace {

struct CommonOptions {
  std::string domain_path;
  double c_w = 1.0;
  int max_level = 6;
  int m = 2;
  int refine = 2;
  unsigned seed = 1;
  std::string out_path;
  std::string svg_path;
};

std::string canonical_config(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << "=" << v << ";";
  return os.str();
}

void emit(const CommonOptions& opt, fs::json j, const std::string& canonical) {
  j["provenance"] = fs::provenance_block(canonical, opt.seed);
  if (opt.out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    fs::write_json_file(opt.out_path, j);
}

fs::GridFunction load_input_function(const std::string& name,
                                     std::shared_ptr<const fs::Mesh> mesh, int m) {
  if (!name.empty() && name[0] == '@') {
    std::ifstream in(name.substr(1));
    if (!in) throw std::invalid_argument("cannot open node-value file: " + name.substr(1));
    fs::json j;
    in >> j;
    return fs::gridfn_from_json(j, std::move(mesh));
  }
  return fs::sample_function(std::move(mesh), fs::builtin_function(name), m);
}

fs::KernelSpec kernel_by_name(const std::string& name) {
  if (name == "beurling") return fs::KernelSpec::beurling();
  if (name == "riesz1") return fs::KernelSpec::riesz(1);
  if (name == "riesz2") return fs::KernelSpec::riesz(2);
  throw std::invalid_argument("unknown kernel: " + name + " (use beurling|riesz1|riesz2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracspace: Whitney covers, chain certification, difference "
               "seminorms, the Jones extension, and truncated "
               "singular-integral harnesses on polygonal domains"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string variant = "full", fname = "const", kernel = "beurling";
  double s = 0.5, p = 2.0, q = 2.0, rho = 0.5, eta = 0.5, radius = 0.25;
  int pairs = 200, samples = 10000;
  double size_cap_factor = 1.0;
  std::string side = "interior";
  std::string radii_csv = "4,8,16,32";
  std::string levels_csv;
  std::string csv_path, transform_path;
  int superposition_cap = 25000;

  auto add_common = [&](CLI::App* cmd, bool needs_domain = true) {
    if (needs_domain) cmd->add_option("--domain", opt.domain_path, "domain JSON file")->required();
    cmd->add_option("--cw", opt.c_w, "Whitney constant");
    cmd->add_option("--max-level", opt.max_level, "deepest dyadic level");
    cmd->add_option("--m", opt.m, "nodes per cube side");
    cmd->add_option("--refine", opt.refine, "near-diagonal subcell generations");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--out", opt.out_path, "output JSON path (stdout when empty)");
  };

  CLI::App* whitney = app.add_subcommand("whitney", "build and validate a Whitney cover");
  add_common(whitney);
  whitney->add_option("--side", side, "interior|exterior");
  whitney->add_option("--svg", opt.svg_path, "SVG output path");
  whitney->add_option("--superposition-cap", superposition_cap, "50Q overlap cap");

  CLI::App* certify = app.add_subcommand("certify", "certify the uniformity constant");
  add_common(certify);
  certify->add_option("--pairs", pairs, "sampled cube pairs");
  certify->add_option("--svg", opt.svg_path, "SVG of the worst chain");

  CLI::App* norm = app.add_subcommand("norm", "evaluate the difference norm");
  add_common(norm);
  norm->add_option("--f", fname, "builtin name or @node-value-file");
  norm->add_option("--variant", variant, "full|shadow|ball");
  norm->add_option("--s", s, "smoothness");
  norm->add_option("--p", p, "outer exponent");
  norm->add_option("--q", q, "inner exponent");
  norm->add_option("--rho", rho, "ball factor in (0,1)");
  norm->add_option("--csv", csv_path, "convergence table output (CSV)");
  norm->add_option("--levels", levels_csv, "comma-separated levels for the CSV table");

  CLI::App* extend_cmd = app.add_subcommand("extend", "extension and its norm ratio");
  add_common(extend_cmd);
  extend_cmd->add_option("--f", fname, "builtin name or @node-value-file");
  extend_cmd->add_option("--s", s, "smoothness");
  extend_cmd->add_option("--p", p, "outer exponent");
  extend_cmd->add_option("--q", q, "inner exponent");
  extend_cmd->add_option("--size-cap-factor", size_cap_factor, "W3 side cap factor");
  extend_cmd->add_option("--svg", opt.svg_path, "SVG of the pairing");

  CLI::App* t1 = app.add_subcommand("t1", "numerical T(1) report");
  add_common(t1);
  t1->add_option("--kernel", kernel, "beurling|riesz1|riesz2");
  t1->add_option("--s", s, "smoothness");
  t1->add_option("--p", p, "outer exponent");
  t1->add_option("--q", q, "inner exponent");
  t1->add_option("--emit-transform", transform_path, "write the transformed samples (node-value JSON)");

  CLI::App* harness = app.add_subcommand("harness", "cube-sum transform bound ratio");
  add_common(harness);
  harness->add_option("--kernel", kernel, "beurling|riesz1|riesz2");
  harness->add_option("--f", fname, "builtin name or @node-value-file");
  harness->add_option("--s", s, "smoothness");
  harness->add_option("--p", p, "outer exponent");
  harness->add_option("--q", q, "inner exponent");

  CLI::App* sharp = app.add_subcommand("sharpness", "divergence-rate slope experiment");
  sharp->add_option("--s", s, "smoothness")->required();
  sharp->add_option("--p", p, "outer exponent")->required();
  sharp->add_option("--q", q, "inner exponent")->required();
  sharp->add_option("--radii", radii_csv, "comma-separated truncation radii");
  sharp->add_option("--out", opt.out_path, "output JSON path");
  sharp->add_option("--seed", opt.seed, "random seed");

  CLI::App* maximal_cmd = app.add_subcommand("maximal", "maximal-operator inequality ratios");
  add_common(maximal_cmd);
  maximal_cmd->add_option("--f", fname, "builtin name or @node-value-file");
  maximal_cmd->add_option("--eta", eta, "exponent");
  maximal_cmd->add_option("--r", radius, "threshold length");

  CLI::App* verify = app.add_subcommand("verify-kernel", "sample the kernel conditions");
  verify->add_option("--kernel", kernel, "beurling|riesz1|riesz2");
  verify->add_option("--samples", samples, "sample count");
  verify->add_option("--seed", opt.seed, "random seed");
  verify->add_option("--out", opt.out_path, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (whitney->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const fs::Side sd = side == "exterior" ? fs::Side::Exterior : fs::Side::Interior;
      const auto cover = fs::WhitneyCover::build(domain, sd, opt.c_w, opt.max_level);
      const auto violations = cover.validate(superposition_cap, 10000, opt.seed);
      fs::json j = fs::cover_to_json(cover);
      j["violations"] = fs::violations_to_json(violations);
      j["superposition_50q"] = cover.superposition_50q();
      if (!opt.svg_path.empty()) fs::svg_cover(cover, opt.svg_path);
      emit(opt, j,
           canonical_config({{"cmd", "whitney"},
                             {"domain", opt.domain_path},
                             {"side", side},
                             {"cw", std::to_string(opt.c_w)},
                             {"max_level", std::to_string(opt.max_level)}}));
      return violations.empty() ? 0 : 1;
    }

    if (certify->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const auto cover = fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, opt.max_level);
      const auto cert = fs::certify_uniform(cover, pairs, opt.seed);
      if (!opt.svg_path.empty())
        fs::svg_chain(cover, fs::find_chain(cover, cert.worst_q, cert.worst_s), opt.svg_path);
      emit(opt, fs::certificate_to_json(cert),
           canonical_config({{"cmd", "certify"},
                             {"domain", opt.domain_path},
                             {"cw", std::to_string(opt.c_w)},
                             {"max_level", std::to_string(opt.max_level)},
                             {"pairs", std::to_string(pairs)},
                             {"seed", std::to_string(opt.seed)}}));
      return cert.rho_ok ? 0 : 1;
    }

    if (norm->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      fs::SeminormParams params{s, p, q};

      auto evaluate_at = [&](int max_level) {
        const auto cover =
            fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, max_level);
        auto mesh = fs::Mesh::from_cover(cover);
        const fs::GridFunction f = load_input_function(fname, mesh, opt.m);
        fs::SeminormOptions options;
        options.refine = opt.refine;
        std::unique_ptr<fs::ShadowIndex> shadows;
        if (variant == "full") {
          options.variant = fs::SeminormVariant::Full;
        } else if (variant == "shadow") {
          options.variant = fs::SeminormVariant::Shadow;
          const auto cert = fs::certify_uniform(cover, 200, opt.seed);
          shadows = std::make_unique<fs::ShadowIndex>(cover, cert.rho_ok ? cert.rho_eps : 5.0);
          options.shadows = shadows.get();
        } else if (variant == "ball") {
          options.variant = fs::SeminormVariant::Ball;
          options.rho_ball = rho;
        } else {
          throw std::invalid_argument("unknown variant: " + variant);
        }
        return fs::seminorm(f, params, options);
      };

      if (!csv_path.empty()) {
        std::vector<int> levels;
        std::stringstream ss(levels_csv.empty() ? std::to_string(opt.max_level) : levels_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) levels.push_back(std::stoi(tok));
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot write CSV file: " + csv_path);
        csv << "level,m,refine,value,tail,collar\n";
        for (int level : levels) {
          const fs::NormReport r = evaluate_at(level);
          csv << level << "," << r.m << "," << r.refine << "," << r.total << ","
              << r.tail_estimate << "," << r.collar_measure << "\n";
        }
      }

      const fs::NormReport rep = evaluate_at(opt.max_level);
      emit(opt, fs::norm_report_to_json(rep),
           canonical_config({{"cmd", "norm"},
                             {"domain", opt.domain_path},
                             {"f", fname},
                             {"variant", variant},
                             {"s", std::to_string(s)},
                             {"p", std::to_string(p)},
                             {"q", std::to_string(q)},
                             {"max_level", std::to_string(opt.max_level)},
                             {"m", std::to_string(opt.m)}}));
      return 0;
    }

    if (extend_cmd->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const auto interior = fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, opt.max_level);
      const auto exterior = fs::WhitneyCover::build(domain, fs::Side::Exterior, opt.c_w, opt.max_level);
      const auto structure = fs::build_exterior_structure(interior, exterior, size_cap_factor);
      const fs::GridFunction f = load_input_function(fname, structure.interior_mesh, opt.m);
      const fs::SeminormParams params{s, p, q};
      const auto rep = fs::extension_norm_ratio(f, params, structure, opt.refine);
      fs::json j = fs::extension_ratio_to_json(rep);
      j["structure"] = fs::structure_to_json(structure);
      j["extended"] = fs::gridfn_to_json(fs::extend(f, structure));
      if (!opt.svg_path.empty()) fs::svg_pairing(structure, opt.svg_path);
      emit(opt, j,
           canonical_config({{"cmd", "extend"},
                             {"domain", opt.domain_path},
                             {"f", fname},
                             {"s", std::to_string(s)},
                             {"p", std::to_string(p)},
                             {"q", std::to_string(q)},
                             {"max_level", std::to_string(opt.max_level)}}));
      return 0;
    }

    if (t1->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const auto cover = fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, opt.max_level);
      auto mesh = fs::Mesh::from_cover(cover);
      const auto cert = fs::certify_uniform(cover, 200, opt.seed);
      const fs::ShadowIndex shadows(cover, cert.rho_ok ? cert.rho_eps : 5.0);
      const fs::SeminormParams params{s, p, q};
      const fs::PVQuadrature quad;
      fs::GridFunction transform(mesh, opt.m, false);
      const auto rep = fs::t1_check(kernel_by_name(kernel), mesh, params, shadows, quad, opt.m,
                                    opt.refine, &transform);
      if (!transform_path.empty()) fs::write_json_file(transform_path, fs::gridfn_to_json(transform));
      if (rep.s_hypothesis_warning)
        std::cerr << "warning: s <= d/p, outside the T(1) hypothesis; norm still computed\n";
      emit(opt, fs::t1_report_to_json(rep),
           canonical_config({{"cmd", "t1"},
                             {"domain", opt.domain_path},
                             {"kernel", kernel},
                             {"s", std::to_string(s)},
                             {"p", std::to_string(p)},
                             {"q", std::to_string(q)},
                             {"max_level", std::to_string(opt.max_level)}}));
      return 0;
    }

    if (harness->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const auto cover = fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, opt.max_level);
      auto mesh = fs::Mesh::from_cover(cover);
      const auto cert = fs::certify_uniform(cover, 200, opt.seed);
      const fs::ShadowIndex shadows(cover, cert.rho_ok ? cert.rho_eps : 5.0);
      const fs::GridFunction f = load_input_function(fname, mesh, opt.m);
      const fs::SeminormParams params{s, p, q};
      const fs::PVQuadrature quad;
      const auto rep = fs::transform_bound_ratio(kernel_by_name(kernel), f, params, shadows, quad, opt.refine);
      emit(opt, fs::transform_bound_to_json(rep),
           canonical_config({{"cmd", "harness"},
                             {"domain", opt.domain_path},
                             {"kernel", kernel},
                             {"f", fname},
                             {"s", std::to_string(s)},
                             {"p", std::to_string(p)},
                             {"q", std::to_string(q)}}));
      return 0;
    }

    if (sharp->parsed()) {
      std::vector<double> radii;
      std::stringstream ss(radii_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) radii.push_back(std::stod(tok));
      const fs::SeminormParams params{s, p, q};
      const auto rep = fs::sharpness_experiment(params, radii);
      emit(opt, fs::slope_report_to_json(rep),
           canonical_config({{"cmd", "sharpness"},
                             {"s", std::to_string(s)},
                             {"p", std::to_string(p)},
                             {"q", std::to_string(q)},
                             {"radii", radii_csv}}));
      return 0;
    }

    if (maximal_cmd->parsed()) {
      const fs::Domain domain = fs::domain_from_file(opt.domain_path);
      const auto cover = fs::WhitneyCover::build(domain, fs::Side::Interior, opt.c_w, opt.max_level);
      auto mesh = fs::Mesh::from_cover(cover);
      const fs::GridFunction g = load_input_function(fname, mesh, opt.m);
      const auto rep = fs::check_maximal_lemma(g, 0, eta, radius);
      emit(opt, fs::maximal_lemma_to_json(rep),
           canonical_config({{"cmd", "maximal"},
                             {"domain", opt.domain_path},
                             {"f", fname},
                             {"eta", std::to_string(eta)},
                             {"r", std::to_string(radius)}}));
      return 0;
    }

    if (verify->parsed()) {
      const auto rep = fs::verify_kernel(kernel_by_name(kernel), samples, opt.seed);
      emit(opt, fs::kernel_report_to_json(rep),
           canonical_config({{"cmd", "verify-kernel"},
                             {"kernel", kernel},
                             {"samples", std::to_string(samples)},
                             {"seed", std::to_string(opt.seed)}}));
      return rep.size_ok && rep.smooth_ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
