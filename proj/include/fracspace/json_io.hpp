#ifndef FRACSPACE_JSON_IO_HPP
#define FRACSPACE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "fracspace/chains.hpp"
#include "fracspace/czo.hpp"
#include "fracspace/extension.hpp"
#include "fracspace/gridfn.hpp"
#include "fracspace/maximal.hpp"
#include "fracspace/seminorm.hpp"
#include "fracspace/sharpness.hpp"

namespace fracspace {

using json = nlohmann::ordered_json;

Domain domain_from_json(const json& j);
Domain domain_from_file(const std::string& path);
json domain_to_json(const Domain& d);

json cover_to_json(const WhitneyCover& cover);
json violations_to_json(const std::vector<CoverViolation>& violations);
json certificate_to_json(const EpsCertificate& cert);
json norm_report_to_json(const NormReport& rep);
json kernel_report_to_json(const KernelReport& rep);
json t1_report_to_json(const T1Report& rep);
json transform_bound_to_json(const TransformBoundReport& rep);
json slope_report_to_json(const SlopeReport& rep);
json geometric_sums_to_json(const GeometricSumsReport& rep);
json maximal_lemma_to_json(const MaximalLemmaReport& rep);
json extension_ratio_to_json(const ExtensionRatioReport& rep);
json structure_to_json(const ExteriorStructure& s);

// Node-value file: {"m": ..., "n_cells": ..., "complex": ..., "values": [...]}.
json gridfn_to_json(const GridFunction& f);
GridFunction gridfn_from_json(const json& j, std::shared_ptr<const Mesh> mesh);

// FNV-1a hash of a canonical string, for provenance blocks.
std::string config_hash(const std::string& canonical);
json provenance_block(const std::string& canonical_config, unsigned seed);

void write_json_file(const std::string& path, const json& j);

}  // namespace fracspace

#endif
