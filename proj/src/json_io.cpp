#include "fracspace/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace fracspace {

Domain domain_from_json(const json& j) {
  if (!j.contains("type") || j["type"] != "polygon")
    throw std::invalid_argument("domain file must have type \"polygon\"");
  std::vector<Vec2> vs;
  for (const auto& v : j.at("vertices")) vs.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  return Domain(std::move(vs));
}

Domain domain_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open domain file: " + path);
  json j;
  in >> j;
  return domain_from_json(j);
}

json domain_to_json(const Domain& d) {
  json j;
  j["type"] = "polygon";
  json vs = json::array();
  for (const Vec2& v : d.vertices()) vs.push_back({v.x, v.y});
  j["vertices"] = vs;
  return j;
}

json cover_to_json(const WhitneyCover& cover) {
  json j;
  j["c_w"] = cover.c_w();
  j["root_scale"] = cover.root_scale();
  j["side"] = cover.side() == Side::Interior ? "interior" : "exterior";
  j["box"] = {cover.origin().x, cover.origin().y, cover.root_scale()};
  j["max_level"] = cover.max_level();
  j["n_accepted"] = cover.n_accepted();
  j["uncovered_measure"] = cover.uncovered_measure();
  json cubes = json::array();
  for (int i = 0; i < cover.n_cells(); ++i) {
    const DyadicCube& c = cover.cubes()[i];
    json e;
    e["level"] = c.level;
    e["ix"] = c.ix;
    e["iy"] = c.iy;
    e["flags"] = cover.is_frontier(i) ? "frontier" : "";
    cubes.push_back(e);
  }
  j["cubes"] = cubes;
  return j;
}

json violations_to_json(const std::vector<CoverViolation>& violations) {
  json arr = json::array();
  for (const auto& v : violations) {
    json e;
    e["kind"] = v.kind;
    e["detail"] = v.detail;
    e["cube_a"] = v.cube_a;
    e["cube_b"] = v.cube_b;
    arr.push_back(e);
  }
  return arr;
}

json certificate_to_json(const EpsCertificate& cert) {
  json j;
  j["eps"] = cert.eps;
  j["rho_eps"] = cert.rho_eps;
  j["rho_ok"] = cert.rho_ok;
  if (!cert.rho_ok) j["rho_failure"] = cert.rho_failure;
  j["pairs_tested"] = cert.pairs_tested;
  j["worst_pair"] = {cert.worst_q, cert.worst_s};
  j["seed"] = cert.seed;
  return j;
}

json norm_report_to_json(const NormReport& rep) {
  json j;
  j["lp_part"] = rep.lp_part;
  j["seminorm_part"] = rep.seminorm_part;
  j["total"] = rep.total;
  j["variant"] = rep.variant;
  j["rho"] = rep.rho;
  j["m"] = rep.m;
  j["max_level"] = rep.max_level;
  j["refine"] = rep.refine;
  j["tail_estimate"] = rep.tail_estimate;
  j["collar_measure"] = rep.collar_measure;
  j["uncovered_measure"] = rep.uncovered_measure;
  j["excluded_cell_bound"] = rep.excluded_cell_bound;
  return j;
}

json kernel_report_to_json(const KernelReport& rep) {
  json j;
  j["max_size_quotient"] = rep.max_size_quotient;
  j["max_smooth_quotient"] = rep.max_smooth_quotient;
  j["size_ok"] = rep.size_ok;
  j["smooth_ok"] = rep.smooth_ok;
  j["n_samples"] = rep.n_samples;
  j["seed"] = rep.seed;
  return j;
}

json t1_report_to_json(const T1Report& rep) {
  json j;
  j["lp"] = rep.lp;
  j["grad_lp"] = rep.grad_lp;
  j["total"] = rep.total;
  json nc;
  nc["lp"] = rep.lp_nc;
  nc["grad_lp"] = rep.grad_lp_nc;
  nc["total"] = rep.total_nc;
  j["collar_excluded_variant"] = nc;
  json worst = json::array();
  for (const auto& [cell, v] : rep.worst_cubes) worst.push_back({{"cell", cell}, {"value", v}});
  j["worst_cubes"] = worst;
  j["s_hypothesis_warning"] = rep.s_hypothesis_warning;
  j["n_nonconverged"] = rep.n_nonconverged;
  return j;
}

json transform_bound_to_json(const TransformBoundReport& rep) {
  json j;
  j["lhs"] = rep.lhs;
  j["denom"] = rep.denom;
  j["ratio"] = rep.ratio;
  j["zero_denominator"] = rep.zero_denominator;
  return j;
}

json slope_report_to_json(const SlopeReport& rep) {
  json j;
  j["radii"] = rep.radii;
  j["values"] = rep.values;
  j["slope"] = rep.slope;
  j["expected_slope"] = rep.expected_slope;
  return j;
}

json geometric_sums_to_json(const GeometricSumsReport& rep) {
  json j;
  j["max_shadow_sum"] = rep.max_shadow_sum;
  j["max_chain_up"] = rep.max_chain_up;
  j["max_chain_down"] = rep.max_chain_down;
  j["chain_pairs"] = rep.chain_pairs;
  return j;
}

json maximal_lemma_to_json(const MaximalLemmaReport& rep) {
  json j;
  j["nonlocal"] = {{"lhs", rep.nonlocal_lhs}, {"rhs", rep.nonlocal_rhs}, {"ratio", rep.nonlocal_ratio}};
  j["local"] = {{"lhs", rep.local_lhs}, {"rhs", rep.local_rhs}, {"ratio", rep.local_ratio}};
  j["sum"] = {{"lhs", rep.sum_lhs}, {"rhs", rep.sum_rhs}, {"ratio", rep.sum_ratio}};
  return j;
}

json extension_ratio_to_json(const ExtensionRatioReport& rep) {
  json j;
  j["numerator"] = norm_report_to_json(rep.numerator);
  j["denominator"] = norm_report_to_json(rep.denominator);
  j["ratio"] = rep.ratio;
  j["zero_denominator"] = rep.zero_denominator;
  j["constant_input"] = rep.constant_input;
  return j;
}

json structure_to_json(const ExteriorStructure& s) {
  json j;
  j["n_exterior_cells"] = s.exterior_cells.size();
  j["n_w3"] = s.n_w3;
  j["n_w4"] = s.n_w4;
  j["size_cap"] = s.size_cap;
  j["partner_distance_constant"] = s.partner_distance_constant;
  j["max_partner_overlap"] = s.max_partner_overlap;
  json partners = json::array();
  for (int e = 0; e < static_cast<int>(s.exterior_cells.size()); ++e) {
    if (!s.in_w3[e]) continue;
    partners.push_back({{"cell",
                         {{"level", s.exterior_cells[e].level},
                          {"ix", s.exterior_cells[e].ix},
                          {"iy", s.exterior_cells[e].iy}}},
                        {"partner", s.partner[e]},
                        {"w4", static_cast<bool>(s.in_w4[e])}});
  }
  j["partners"] = partners;
  return j;
}

json gridfn_to_json(const GridFunction& f) {
  json j;
  j["m"] = f.nodes_per_side();
  j["n_cells"] = f.mesh().n_cells();
  j["complex"] = !f.is_real();
  json vals = json::array();
  if (f.is_real()) {
    for (const auto& v : f.values()) vals.push_back(v.real());
  } else {
    for (const auto& v : f.values()) {
      vals.push_back(v.real());
      vals.push_back(v.imag());
    }
  }
  j["values"] = vals;
  return j;
}

GridFunction gridfn_from_json(const json& j, std::shared_ptr<const Mesh> mesh) {
  const int m = j.at("m").get<int>();
  const int n_cells = j.at("n_cells").get<int>();
  if (n_cells != mesh->n_cells())
    throw std::invalid_argument("node-value file does not match the cover (cell count differs)");
  const bool cplx = j.value("complex", false);
  GridFunction f(std::move(mesh), m, !cplx);
  const auto& vals = j.at("values");
  const std::size_t expected = static_cast<std::size_t>(n_cells) * m * m * (cplx ? 2 : 1);
  if (vals.size() != expected)
    throw std::invalid_argument("node-value file has the wrong number of samples");
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (cplx)
      f.values()[i] = {vals[2 * i].get<double>(), vals[2 * i + 1].get<double>()};
    else
      f.values()[i] = {vals[i].get<double>(), 0.0};
  }
  return f;
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json provenance_block(const std::string& canonical_config, unsigned seed) {
  json j;
  j["config_hash"] = config_hash(canonical_config);
  j["seed"] = seed;
  j["defaults"] = {{"geometry", 1}, {"chains", 1}, {"funcspace", 1}, {"extension", 1}, {"czo", 1}};
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fracspace
