#include "pmatch/pmatch.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "alphabet_filter.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "stream_matcher.hpp"

struct pm_matcher {
  pmatch::StreamMatcher engine;
  std::optional<pmatch::AlphabetFilter> filter;
  std::uint64_t m;
  std::uint64_t clock = 0;
  bool dead = false;
  bool track_words = false;
  std::size_t peak_words = 0;  // engine plus filter, sampled every arrival
};

namespace {

thread_local std::string g_last_error;

pm_status fail(pm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps in-flight exceptions to status codes. Call only from a catch block.
pm_status translate() {
  try {
    throw;
  } catch (const pmatch::ConfigError& e) {
    return fail(PM_ERR_CONFIG, e.what());
  } catch (const pmatch::UsageError& e) {
    return fail(PM_ERR_USAGE, e.what());
  } catch (const pmatch::AlphabetError& e) {
    return fail(PM_ERR_ALPHABET, e.what());
  } catch (const pmatch::StructuralViolation& e) {
    return fail(PM_ERR_STRUCTURAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PM_ERR_NOMEM, "out of memory");
  } catch (const std::exception& e) {
    return fail(PM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PM_ERR_INTERNAL, "unknown exception");
  }
}

pmatch::MatchMode to_mode(pm_mode mode) {
  switch (mode) {
    case PM_MODE_AUTO: return pmatch::MatchMode::kAuto;
    case PM_MODE_DET: return pmatch::MatchMode::kDeterministic;
    case PM_MODE_RAND: return pmatch::MatchMode::kRandomized;
  }
  throw pmatch::ConfigError("unknown mode " + std::to_string(static_cast<int>(mode)));
}

pm_status step_one(pm_matcher* h, std::uint64_t symbol, bool& matched) {
  if (h->dead) return fail(PM_ERR_STRUCTURAL, "matcher stopped after a structural violation");
  try {
    const std::uint64_t code = h->filter ? h->filter->step(symbol) : symbol;
    matched = h->engine.step(code);
    ++h->clock;
    if (h->track_words) {
      const std::size_t words =
          h->engine.live_words() + (h->filter ? h->filter->live_words() : 0);
      h->peak_words = std::max(h->peak_words, words);
    }
    return PM_OK;
  } catch (const pmatch::StructuralViolation&) {
    h->dead = true;
    return translate();
  } catch (...) {
    return translate();
  }
}

}  // namespace

extern "C" {

void pm_config_init(pm_config* cfg) {
  if (!cfg) return;
  cfg->prime_bits = 61;
  cfg->seed = 1;
  cfg->mode = PM_MODE_AUTO;
  cfg->general_alphabet = 0;
  cfg->track_words = 0;
}

pm_status pm_matcher_create(const uint64_t* pattern, size_t m, uint64_t alphabet_size,
                            const pm_config* cfg, pm_matcher** out) {
  if (!out) return fail(PM_ERR_USAGE, "null output handle");
  *out = nullptr;
  if (m > 0 && !pattern) return fail(PM_ERR_USAGE, "null pattern");
  pm_config defaults;
  pm_config_init(&defaults);
  if (!cfg) cfg = &defaults;
  try {
    pmatch::StreamConfig sc;
    sc.prime_bits = cfg->prime_bits;
    sc.seed = cfg->seed;
    sc.mode = to_mode(cfg->mode);
    sc.track_words = cfg->track_words != 0;
    std::span<const std::uint64_t> raw(pattern, m);
    if (cfg->general_alphabet) {
      if (m == 0) throw pmatch::ConfigError("pattern must be non-empty");
      pmatch::DensePattern dense = pmatch::densify_pattern(raw);
      auto h = std::unique_ptr<pm_matcher>(new pm_matcher{
          pmatch::StreamMatcher(dense.symbols, dense.alphabet + 1, sc), std::nullopt, m});
      h->filter.emplace(dense.alphabet, m);
      h->track_words = sc.track_words;
      *out = h.release();
    } else {
      *out = new pm_matcher{pmatch::StreamMatcher(raw, alphabet_size, sc), std::nullopt, m};
      (*out)->track_words = sc.track_words;
    }
    return PM_OK;
  } catch (...) {
    return translate();
  }
}

void pm_matcher_destroy(pm_matcher* matcher) { delete matcher; }

pm_status pm_matcher_step(pm_matcher* matcher, uint64_t symbol, int* matched) {
  if (!matcher || !matched) return fail(PM_ERR_USAGE, "null argument");
  bool hit = false;
  const pm_status st = step_one(matcher, symbol, hit);
  *matched = hit ? 1 : 0;
  return st;
}

pm_status pm_matcher_feed(pm_matcher* matcher, const uint64_t* symbols, size_t n,
                          uint64_t* starts, size_t* count) {
  if (!matcher || !count || (n > 0 && (!symbols || !starts))) {
    return fail(PM_ERR_USAGE, "null argument");
  }
  *count = 0;
  for (size_t k = 0; k < n; ++k) {
    bool hit = false;
    const pm_status st = step_one(matcher, symbols[k], hit);
    if (st != PM_OK) return st;
    if (hit) starts[(*count)++] = matcher->clock - matcher->m;
  }
  return PM_OK;
}

pm_status pm_matcher_stats(const pm_matcher* matcher, pm_stats* out) {
  if (!matcher || !out) return fail(PM_ERR_USAGE, "null argument");
  try {
    const pmatch::StreamStats s = matcher->engine.stats();
    const pmatch::PrefixLadder& ladder = matcher->engine.ladder();
    std::memset(out, 0, sizeof *out);
    out->arrivals = s.arrivals;
    out->max_ops = s.max_ops;
    out->total_ops = s.total_ops;
    out->peak_words = matcher->peak_words;
    out->live_words = matcher->engine.live_words() +
                      (matcher->filter ? matcher->filter->live_words() : 0);
    out->max_buffer = s.max_b;
    out->max_zero_queue = s.max_d;
    out->max_segments = s.max_segments;
    out->structural_violations = s.structural_violations;
    out->det_max_shifts = s.det.max_shifts;
    out->det_max_pending = s.det.max_pending;
    out->det_late_matches = s.det.late_matches;
    out->randomized = matcher->engine.randomized() ? 1 : 0;
    out->alphabet = ladder.sigma;
    out->delta = matcher->engine.randomized() ? ladder.delta : 0;
    out->levels = ladder.s();
    out->pperiod = ladder.rho;
    out->prime = matcher->engine.field().prime();
    return PM_OK;
  } catch (...) {
    return translate();
  }
}

pm_status pm_naive_all_matches(const uint64_t* pattern, size_t m, const uint64_t* text, size_t n,
                               uint64_t** starts, size_t* count) {
  if (!starts || !count || (m > 0 && !pattern) || (n > 0 && !text)) {
    return fail(PM_ERR_USAGE, "null argument");
  }
  *starts = nullptr;
  *count = 0;
  try {
    const std::vector<std::uint64_t> hits = pmatch::oracle::naive_all_matches(
        std::span<const std::uint64_t>(pattern, m), std::span<const std::uint64_t>(text, n));
    if (hits.empty()) return PM_OK;
    auto* buf = static_cast<uint64_t*>(std::malloc(hits.size() * sizeof(uint64_t)));
    if (!buf) return fail(PM_ERR_NOMEM, "out of memory");
    std::memcpy(buf, hits.data(), hits.size() * sizeof(uint64_t));
    *starts = buf;
    *count = hits.size();
    return PM_OK;
  } catch (...) {
    return translate();
  }
}

void pm_free(void* p) { std::free(p); }

const char* pm_status_string(pm_status status) {
  switch (status) {
    case PM_OK: return "ok";
    case PM_ERR_CONFIG: return "configuration error";
    case PM_ERR_USAGE: return "usage error";
    case PM_ERR_ALPHABET: return "alphabet error";
    case PM_ERR_STRUCTURAL: return "structural violation";
    case PM_ERR_NOMEM: return "out of memory";
    case PM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pm_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
