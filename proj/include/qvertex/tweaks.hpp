#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qv {

/// Named perturbations of q-exponents (in ticks) used by negative controls.
/// An empty set reproduces the unperturbed formulas.
struct Tweaks {
  std::map<std::string, std::int64_t> t;

  std::int64_t get(const std::string& name) const {
    auto it = t.find(name);
    return it == t.end() ? 0 : it->second;
  }
  static Tweaks single(const std::string& name, std::int64_t ticks) { return Tweaks{{{name, ticks}}}; }
};

}  // namespace qv
