#pragma once

#include <vector>

#include "exmine/log/types.hpp"

namespace exmine {

// Groups records by client_id, orders each group by timestamp (stable, so
// equal timestamps keep input order), and splits on inactivity gaps strictly
// greater than gap_seconds. Clients are emitted in ascending client_id order;
// session_id is "<client_id>:<running index>".
std::vector<Session> segment_sessions(const std::vector<SearchRecord>& records,
                                      int64_t gap_seconds = 1800);

}  // namespace exmine
