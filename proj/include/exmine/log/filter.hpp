#pragma once

#include <vector>

#include "exmine/log/types.hpp"

namespace exmine {

// True iff the record passes every enabled gate: locale, region, trigger
// keyword (case-insensitive substring of raw_query or any clicked URL),
// click requirement, and the ASCII check on raw_query. An empty
// allowed_locales or allowed_regions set disables that gate.
bool record_passes_filter(const SearchRecord& r, const FilterConfig& config);

// Keeps passing records in their original relative order. Idempotent.
std::vector<SearchRecord> filter_records(const std::vector<SearchRecord>& records,
                                         const FilterConfig& config);

}  // namespace exmine
