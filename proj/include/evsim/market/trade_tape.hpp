#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsim/kernel/run_log.hpp"
#include "evsim/market/exchange_agent.hpp"

namespace evsim::market {

/// Trade tape rows recorded by the exchange agent in a run log.
std::vector<TapeRow> trade_tape(const RunLog& log);

/// FNV-1a over the formatted rows; a compact fingerprint for logs and manifests.
std::uint64_t tape_digest(const std::vector<TapeRow>& rows);

}  // namespace evsim::market
