#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbb/cartan.hpp"

namespace qbb {

// Reference datums: D-iso (one isotropic index), D-im (one index with a_ii = -2),
// D-mix (a real index next to an isotropic one).
inline std::optional<Datum> canned_datum(const std::string& name) {
  if (name == "D-iso") return Datum({"i"}, {{0}}, {1});
  if (name == "D-im") return Datum({"i"}, {{-2}}, {1});
  if (name == "D-mix") return Datum({"i", "j"}, {{2, -1}, {-1, 0}}, {1, 1});
  if (name == "A1") return Datum({"i"}, {{2}}, {1});
  return std::nullopt;
}

inline std::vector<std::string> canned_names() { return {"D-iso", "D-im", "D-mix", "A1"}; }

}  // namespace qbb
