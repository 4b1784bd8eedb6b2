#pragma once

// Brute-force ground truth. Deliberately shares no code with the engine:
// it has its own predecessor computation and never touches fingerprints.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pmatch::oracle {

using u64 = std::uint64_t;

std::vector<u64> naive_pred(std::span<const u64> s);

// Throws std::invalid_argument on length mismatch.
bool naive_pmatch(std::span<const u64> a, std::span<const u64> b);

// All window starts w with P p-matching T[w .. w+m-1], ascending.
std::vector<u64> naive_all_matches(std::span<const u64> pattern, std::span<const u64> text);

u64 naive_pperiod(std::span<const u64> pattern);

u64 distinct_count(std::span<const u64> s);

struct MatchStructure {
  std::vector<u64> matches;  // X: every match start in the window
  std::vector<u64> explicit_part;  // Y
  u64 progression_start = 0;       // A, empty when progression_count == 0
  u64 progression_diff = 0;
  u64 progression_count = 0;
  // Side check: the global predecessor block
  // pred(T)[i+m-rho .. i+m-1] is identical for every i in A.
  bool block_equal = true;
  std::optional<std::string> violation;
};

// Requires P to p-match T at i_left (std::invalid_argument otherwise).
// Examines match starts in [i_left, i_left + window); window 0 means 3m/2.
MatchStructure verify_match_structure(std::span<const u64> pattern, std::span<const u64> text,
                                      u64 i_left, u64 window = 0);

}  // namespace pmatch::oracle
