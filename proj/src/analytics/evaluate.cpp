#include "exmine/analytics/evaluate.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace exmine {
namespace {

using EntityKey = std::tuple<std::string, std::string, size_t, size_t>;

EntityKey key_of(const EntityRef& e) { return {e.cls, e.record_id, e.begin, e.end}; }

}  // namespace

MacroAverage macro_average(const std::vector<ClassScore>& rows) {
  MacroAverage m;
  if (rows.empty()) return m;
  for (const auto& r : rows) {
    m.precision += r.precision;
    m.recall += r.recall;
    m.f1 += r.f1;
  }
  double n = static_cast<double>(rows.size());
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  return m;
}

NerEvaluation evaluate_ner(const std::vector<EntityRef>& gold,
                           const std::vector<EntityRef>& predicted) {
  std::map<EntityKey, size_t> gold_counts, pred_counts;
  std::map<std::string, ClassScore> by_class;
  for (const auto& e : gold) {
    gold_counts[key_of(e)]++;
    auto& row = by_class[e.cls];
    row.cls = e.cls;
    row.support++;
  }
  for (const auto& e : predicted) {
    pred_counts[key_of(e)]++;
    auto& row = by_class[e.cls];
    row.cls = e.cls;
    row.predicted++;
  }
  for (const auto& [key, gn] : gold_counts) {
    auto it = pred_counts.find(key);
    if (it == pred_counts.end()) continue;
    by_class[std::get<0>(key)].correct += std::min(gn, it->second);
  }

  NerEvaluation eval;
  for (auto& [cls, row] : by_class) {
    row.precision = row.predicted ? static_cast<double>(row.correct) / row.predicted : 0.0;
    row.recall = row.support ? static_cast<double>(row.correct) / row.support : 0.0;
    double pr = row.precision + row.recall;
    row.f1 = pr > 0 ? 2.0 * row.precision * row.recall / pr : 0.0;
    eval.per_class.push_back(row);
  }
  eval.macro = macro_average(eval.per_class);
  return eval;
}

}  // namespace exmine
