#pragma once

#include <set>
#include <string>
#include <vector>

#include "exmine/weak/rules.hpp"

namespace exmine {

// Canonical keys rejected during group review. Keys are stored lowercased.
class Denylist {
 public:
  Denylist() = default;
  explicit Denylist(const std::vector<std::string>& keys);

  // One key per line, '#' comments, blank lines ignored.
  static Denylist load(const std::string& path);

  bool contains(const std::string& canonical_key) const;
  size_t size() const { return rejected_keys_.size(); }

 private:
  std::set<std::string> rejected_keys_;
};

// Drops labels whose lowercased surface is denylisted; order preserved.
std::vector<WeakLabel> apply_denylist(const std::vector<WeakLabel>& labels,
                                      const Denylist& denylist);

}  // namespace exmine
