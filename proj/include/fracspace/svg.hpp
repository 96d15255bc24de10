#ifndef FRACSPACE_SVG_HPP
#define FRACSPACE_SVG_HPP

#include <string>

#include "fracspace/chains.hpp"
#include "fracspace/extension.hpp"

namespace fracspace {

// Pure emission, no display dependency. Cubes are colored by level.
void svg_cover(const WhitneyCover& cover, const std::string& path);
// Cover with a chain overlay: end cubes and the central cube highlighted.
void svg_chain(const WhitneyCover& cover, const Chain& chain, const std::string& path);
// Interior/exterior pairing arrows from W3 cells to their partners.
void svg_pairing(const ExteriorStructure& s, const std::string& path);

}  // namespace fracspace

#endif
