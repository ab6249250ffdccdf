#include "exmine/log/sessionize.hpp"

#include <algorithm>
#include <map>

namespace exmine {

std::vector<Session> segment_sessions(const std::vector<SearchRecord>& records,
                                      int64_t gap_seconds) {
  std::map<std::string, std::vector<const SearchRecord*>> by_client;
  for (const auto& r : records) by_client[r.client_id].push_back(&r);

  std::vector<Session> sessions;
  for (auto& [client, ptrs] : by_client) {
    std::stable_sort(ptrs.begin(), ptrs.end(),
                     [](const SearchRecord* a, const SearchRecord* b) {
                       return a->timestamp < b->timestamp;
                     });
    size_t index = 0;
    Session* cur = nullptr;
    for (const SearchRecord* r : ptrs) {
      bool fresh = cur == nullptr ||
                   r->timestamp - cur->records.back().timestamp > gap_seconds;
      if (fresh) {
        sessions.push_back({client + ":" + std::to_string(index++), client, {}});
        cur = &sessions.back();
      }
      cur->records.push_back(*r);
    }
  }
  return sessions;
}

}  // namespace exmine
