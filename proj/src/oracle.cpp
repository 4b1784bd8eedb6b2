#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pmatch::oracle {

std::vector<u64> naive_pred(std::span<const u64> s) {
  std::vector<u64> out(s.size(), 0);
  std::map<u64, u64> last;
  for (u64 j = 0; j < s.size(); ++j) {
    auto it = last.find(s[j]);
    if (it != last.end()) out[j] = j - it->second;
    last[s[j]] = j;
  }
  return out;
}

bool naive_pmatch(std::span<const u64> a, std::span<const u64> b) {
  if (a.size() != b.size()) throw std::invalid_argument("naive_pmatch: length mismatch");
  return naive_pred(a) == naive_pred(b);
}

std::vector<u64> naive_all_matches(std::span<const u64> pattern, std::span<const u64> text) {
  std::vector<u64> out;
  const u64 m = pattern.size();
  const u64 n = text.size();
  if (m == 0 || m > n) return out;
  const std::vector<u64> pp = naive_pred(pattern);
  const std::vector<u64> tp = naive_pred(text);  // 0 = no earlier occurrence
  for (u64 w = 0; w + m <= n; ++w) {
    u64 k = 0;
    for (; k < m; ++k) {
      const u64 g = tp[w + k];
      const u64 local = (g != 0 && g <= k) ? g : 0;
      if (local != pp[k]) break;
    }
    if (k == m) out.push_back(w);
  }
  return out;
}

u64 naive_pperiod(std::span<const u64> pattern) {
  const u64 m = pattern.size();
  for (u64 rho = 1; rho < m; ++rho) {
    if (naive_pmatch(pattern.subspan(0, m - rho), pattern.subspan(rho))) return rho;
  }
  return m;
}

u64 distinct_count(std::span<const u64> s) {
  return std::set<u64>(s.begin(), s.end()).size();
}

MatchStructure verify_match_structure(std::span<const u64> pattern, std::span<const u64> text,
                                      u64 i_left, u64 window) {
  const u64 m = pattern.size();
  if (m == 0 || i_left + m > text.size() ||
      !naive_pmatch(pattern, text.subspan(i_left, m))) {
    throw std::invalid_argument("verify_match_structure: no match at i_left");
  }
  MatchStructure out;
  if (window == 0) window = (3 * m) / 2;
  const u64 window_end = std::min<u64>(text.size() - m + 1, i_left + window);
  for (u64 w = i_left; w < window_end; ++w) {
    if (naive_pmatch(pattern, text.subspan(w, m))) out.matches.push_back(w);
  }
  const u64 rho = naive_pperiod(pattern);
  const auto& x = out.matches;

  // Maximal tail progression with difference rho.
  std::size_t first = x.size() - 1;
  while (first > 0 && x[first] - x[first - 1] == rho) --first;
  out.explicit_part.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(first));
  out.progression_start = x[first];
  out.progression_diff = rho;
  out.progression_count = x.size() - first;

  const u64 sigma_p = distinct_count(pattern);
  if (out.explicit_part.size() > 6 * sigma_p) {
    out.violation = "explicit part has " + std::to_string(out.explicit_part.size()) +
                    " positions, bound " + std::to_string(6 * sigma_p);
  } else if (!out.explicit_part.empty() && out.explicit_part.back() >= out.progression_start) {
    out.violation = "explicit part overlaps progression";
  }

  if (out.progression_count >= 2 && rho <= m) {
    const std::vector<u64> tp = naive_pred(text);
    const u64 i0 = out.progression_start;
    for (u64 k = 1; k < out.progression_count && out.block_equal; ++k) {
      const u64 i = i0 + k * rho;
      for (u64 t = 0; t < rho; ++t) {
        if (tp[i + m - rho + t] != tp[i0 + m - rho + t]) {
          out.block_equal = false;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace pmatch::oracle
