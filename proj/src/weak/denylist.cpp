#include "exmine/weak/denylist.hpp"

#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine {

Denylist::Denylist(const std::vector<std::string>& keys) {
  for (const auto& k : keys) rejected_keys_.insert(to_lower(k));
}

Denylist Denylist::load(const std::string& path) {
  return Denylist(load_line_entries(path));
}

bool Denylist::contains(const std::string& canonical_key) const {
  return rejected_keys_.count(to_lower(canonical_key)) != 0;
}

std::vector<WeakLabel> apply_denylist(const std::vector<WeakLabel>& labels,
                                      const Denylist& denylist) {
  std::vector<WeakLabel> kept;
  kept.reserve(labels.size());
  for (const auto& l : labels) {
    if (!denylist.contains(l.surface)) kept.push_back(l);
  }
  return kept;
}

}  // namespace exmine
