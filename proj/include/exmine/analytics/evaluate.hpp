#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace exmine {

// One entity occurrence; span is in token positions within its record.
struct EntityRef {
  std::string record_id;
  std::string cls;  // "ID" or "NAME"
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const EntityRef&) const = default;
};

struct ClassScore {
  std::string cls;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t support = 0;    // gold entities
  size_t predicted = 0;  // predicted entities
  size_t correct = 0;    // exact (record, class, span) matches
};

struct MacroAverage {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Unweighted means of the per-class rows.
MacroAverage macro_average(const std::vector<ClassScore>& rows);

struct NerEvaluation {
  std::vector<ClassScore> per_class;  // classes sorted ascending
  MacroAverage macro;
};

// Exact-match entity scoring: a prediction is correct iff record, class, and
// span all equal a gold entity (count-aware for duplicates). Empty
// denominators score 0.
NerEvaluation evaluate_ner(const std::vector<EntityRef>& gold,
                           const std::vector<EntityRef>& predicted);

}  // namespace exmine
