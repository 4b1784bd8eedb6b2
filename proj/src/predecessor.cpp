#include "predecessor.hpp"

#include <string>
#include <unordered_map>

#include "errors.hpp"

namespace pmatch {

std::vector<u64> pred_string(std::span<const u64> s) {
  std::vector<u64> out(s.size(), 0);
  std::unordered_map<u64, u64> last;
  last.reserve(s.size());
  for (u64 j = 0; j < s.size(); ++j) {
    auto [it, fresh] = last.try_emplace(s[j], j);
    if (!fresh) {
      out[j] = j - it->second;
      it->second = j;
    }
  }
  return out;
}

LastOccurrence::LastOccurrence(u64 sigma) : table_(sigma, kUnseen) {}

PredValue LastOccurrence::step(u64 symbol, u64 i) {
  if (symbol >= table_.size()) {
    throw AlphabetError("symbol " + std::to_string(symbol) + " at index " + std::to_string(i) +
                            " outside alphabet of size " + std::to_string(table_.size()),
                        i);
  }
  u64& slot = table_[symbol];
  PredValue out = slot == kUnseen ? PredValue::never() : PredValue::of(i - slot);
  slot = i;
  return out;
}

}  // namespace pmatch
