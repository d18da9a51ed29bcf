#pragma once

#include <optional>
#include <string>

#include "qvertex/intertwiners.hpp"

namespace qv {

/// `family:a:b[:j=J][@var]` with (a,b) the sector pair of the superscript,
/// or `family:i[:J][@var]` with i the superscript index. j defaults to 0.
struct VODesignator {
  VOFamily family = VOFamily::I;
  int i = 0, j = 0;
  std::string var;
};
std::optional<VODesignator> parse_vo_designator(int n, const std::string& s);

/// `x+:i`, `x-:i`, `phi:i`, `psi:i`, optionally `@var`.
struct CurrentDesignator {
  CurrentKind kind = CurrentKind::xp;
  int i = 1;
  std::string var;
};
std::optional<CurrentDesignator> parse_current_designator(int n, const std::string& s);

}  // namespace qv
