#pragma once

#include <iosfwd>
#include <string>

#include "periorb/jet.hpp"

namespace periorb {

/// Germ file document: `zeta_order` (cyclotomic level), `truncation`, and two
/// component term lists `{e:[i1,i2], c:"<coeff>"}`.  Serialization is
/// canonical, so write(parse(text)) == text for files we produced.
std::string germ_to_string(const GermMap& germ);
GermMap germ_from_string(const std::string& text);

void write_germ_file(const std::string& path, const GermMap& germ);
GermMap read_germ_file(const std::string& path);

} // namespace periorb
