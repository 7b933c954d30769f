#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kratzer/estimate.hpp"
#include "kratzer/physmodel.hpp"

namespace kratzer::shell {

/// One molecule per [section]; keys before the first header form an unnamed
/// section. Throws ParseError with the offending line.
std::vector<Molecule> parse_molecules(std::istream& in);

/// Picks `section` by name, or the only molecule when no name is given.
Molecule select_molecule(const std::vector<Molecule>& mols, const std::optional<std::string>& section);

Molecule load_molecule(const std::string& path, const std::optional<std::string>& section = std::nullopt);

/// Header "n,l,E_cm1[,weight]", comma or tab separated. Blank lines and lines
/// starting with '#' are skipped.
std::vector<LevelObservation> parse_levels(std::istream& in);
std::vector<LevelObservation> load_levels(const std::string& path);

void write_levels(std::ostream& out, const std::vector<LevelObservation>& levels);

}  // namespace kratzer::shell
