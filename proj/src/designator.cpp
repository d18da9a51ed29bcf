#include "qvertex/designator.hpp"

#include <charconv>
#include <vector>

namespace qv {

namespace {

std::vector<std::string> fields(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = s.find(':', start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string::npos) return out;
    start = p + 1;
  }
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) return std::nullopt;
  return v;
}

// Splits off "@var"; nullopt when the variable part is present but empty.
std::optional<std::pair<std::string, std::string>> split_var(const std::string& s) {
  const auto at = s.find('@');
  if (at == std::string::npos) return std::make_pair(s, std::string());
  std::string var = s.substr(at + 1);
  if (var.empty() || var.find('@') != std::string::npos) return std::nullopt;
  return std::make_pair(s.substr(0, at), var);
}

}  // namespace

std::optional<VODesignator> parse_vo_designator(int n, const std::string& s) {
  const auto sv = split_var(s);
  if (!sv) return std::nullopt;
  const auto f = fields(sv->first);
  const auto fam = parse_family(f[0]);
  if (!fam) return std::nullopt;
  VODesignator d;
  d.family = *fam;
  d.var = sv->second;
  std::vector<int> nums;
  std::optional<int> j;
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (f[k].rfind("j=", 0) == 0) {
      if (j) return std::nullopt;
      j = to_int(f[k].substr(2));
      if (!j) return std::nullopt;
    } else {
      auto v = to_int(f[k]);
      if (!v) return std::nullopt;
      nums.push_back(*v);
    }
  }
  for (int v : nums)
    if (v < 0 || v >= n) return std::nullopt;
  const bool dual = is_dual(d.family);
  switch (nums.size()) {
    case 1: d.i = nums[0]; break;
    case 2:
    case 3:
      // (i, i+1) for I and II, (i+1, i) for the duals
      if (dual ? nums[0] != (nums[1] + 1) % n : nums[1] != (nums[0] + 1) % n) return std::nullopt;
      d.i = dual ? nums[1] : nums[0];
      if (nums.size() == 3) {
        if (j) return std::nullopt;
        j = nums[2];
      }
      break;
    default: return std::nullopt;
  }
  d.j = j.value_or(0);
  if (d.j < 0 || d.j >= n) return std::nullopt;
  return d;
}

std::optional<CurrentDesignator> parse_current_designator(int n, const std::string& s) {
  const auto sv = split_var(s);
  if (!sv) return std::nullopt;
  const auto f = fields(sv->first);
  if (f.size() != 2) return std::nullopt;
  CurrentDesignator d;
  d.var = sv->second;
  if (f[0] == "x+") d.kind = CurrentKind::xp;
  else if (f[0] == "x-") d.kind = CurrentKind::xm;
  else if (f[0] == "phi") d.kind = CurrentKind::phi;
  else if (f[0] == "psi") d.kind = CurrentKind::psi;
  else return std::nullopt;
  const auto i = to_int(f[1]);
  if (!i || *i < 1 || *i >= n) return std::nullopt;
  d.i = *i;
  return d;
}

}  // namespace qv
