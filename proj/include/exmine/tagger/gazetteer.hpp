#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace exmine {

// Per-language exception name list. Entries are stored twice: the full
// normalized form ("system.io.filenotfoundexception") and the last-segment
// canonical key ("filenotfoundexception"). Sets may overlap across languages.
struct PlGazetteer {
  std::string language;  // "java", "csharp", "python"
  std::unordered_set<std::string> full_forms;
  std::unordered_set<std::string> canonical_keys;
};

// One name per line, '#' comments.
PlGazetteer load_pl_gazetteer(const std::string& language, const std::string& path);

PlGazetteer make_pl_gazetteer(const std::string& language,
                              const std::vector<std::string>& entries);

// Two passes over the gazetteers in their given order: first an exact match
// on the full normalized form, then a match on the canonical key. The full
// form is checked first so a fully qualified name picks its own language
// even when the bare class name exists in an earlier list. Returns "" when
// no list contains the name.
std::string lookup_language(const std::vector<PlGazetteer>& gazetteers,
                            const std::string& full_form, const std::string& canonical_key);

}  // namespace exmine
