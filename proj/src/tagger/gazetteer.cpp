#include "exmine/tagger/gazetteer.hpp"

#include "exmine/tagger/normalize.hpp"
#include "exmine/util/strings.hpp"
#include "exmine/util/textfile.hpp"

namespace exmine {

PlGazetteer make_pl_gazetteer(const std::string& language,
                              const std::vector<std::string>& entries) {
  PlGazetteer g;
  g.language = language;
  for (const auto& entry : entries) {
    std::string full = normalize_exception(entry, ExceptionClass::kId);
    std::string key = normalize_exception(entry, ExceptionClass::kName);
    g.full_forms.insert(std::move(full));
    g.canonical_keys.insert(std::move(key));
  }
  return g;
}

PlGazetteer load_pl_gazetteer(const std::string& language, const std::string& path) {
  return make_pl_gazetteer(language, load_line_entries(path));
}

std::string lookup_language(const std::vector<PlGazetteer>& gazetteers,
                            const std::string& full_form, const std::string& canonical_key) {
  for (const auto& g : gazetteers) {
    if (g.full_forms.count(full_form)) return g.language;
  }
  for (const auto& g : gazetteers) {
    if (g.canonical_keys.count(canonical_key)) return g.language;
  }
  return "";
}

}  // namespace exmine
