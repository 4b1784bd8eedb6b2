/* Streaming parameterized pattern matching.
 *
 * A matcher is built once from a pattern and then fed one text symbol at a
 * time; each step reports whether the last m symbols p-match the pattern
 * (equal up to an injective relabelling of symbols). Working memory is
 * O(|alphabet| log m) words and every step does a bounded amount of work.
 *
 * All functions return a pm_status. On failure a thread-local message is
 * available from pm_last_error() until the next failing call on the same
 * thread. Handles are not thread-safe; distinct handles are independent.
 */
#ifndef PMATCH_PMATCH_H
#define PMATCH_PMATCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(PMATCH_BUILDING_LIBRARY)
#define PM_API __attribute__((visibility("default")))
#else
#define PM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pm_status {
  PM_OK = 0,
  PM_ERR_CONFIG = 1,     /* unusable construction parameters */
  PM_ERR_USAGE = 2,      /* null handle/pointer or precondition breach */
  PM_ERR_ALPHABET = 3,   /* symbol outside the declared alphabet */
  PM_ERR_STRUCTURAL = 4, /* runtime bound breached; the handle is dead */
  PM_ERR_NOMEM = 5,
  PM_ERR_INTERNAL = 6
} pm_status;

typedef enum pm_mode {
  PM_MODE_AUTO = 0, /* randomized engine when the pattern allows it */
  PM_MODE_DET = 1,
  PM_MODE_RAND = 2  /* PM_ERR_CONFIG if the pattern is not eligible */
} pm_mode;

typedef struct pm_config {
  uint32_t prime_bits;      /* fingerprint modulus width, 16..62; default 61 */
  uint64_t seed;            /* fingerprint base seed; default 1 */
  pm_mode mode;
  /* Nonzero: text symbols are arbitrary 64-bit values routed through the
   * recency filter; alphabet_size is ignored. */
  int general_alphabet;
  /* Nonzero: maintain the peak-live-words gauge (small per-step cost). */
  int track_words;
} pm_config;

typedef struct pm_stats {
  uint64_t arrivals;
  uint64_t max_ops;        /* most elementary operations in one step */
  uint64_t total_ops;
  uint64_t peak_words;     /* engine plus filter; 0 unless track_words */
  uint64_t live_words;
  uint64_t max_buffer;     /* long-gap buffer peak */
  uint64_t max_zero_queue; /* longest zeroing-candidate queue */
  uint64_t max_segments;   /* most segments in any match queue */
  uint64_t structural_violations;
  uint64_t det_max_shifts;
  uint64_t det_max_pending;
  uint64_t det_late_matches;
  int randomized;          /* 1 if the randomized engine is running */
  uint64_t alphabet;       /* effective dense alphabet size */
  uint64_t delta;          /* 0 for the deterministic engine */
  uint64_t levels;         /* ladder levels above P_0; 0 if deterministic */
  uint64_t pperiod;        /* p-period of the pattern */
  uint64_t prime;
} pm_stats;

typedef struct pm_matcher pm_matcher;

PM_API void pm_config_init(pm_config* cfg);

/* pattern[0..m-1] must lie in [0, alphabet_size) unless general_alphabet. */
PM_API pm_status pm_matcher_create(const uint64_t* pattern, size_t m, uint64_t alphabet_size,
                                   const pm_config* cfg, pm_matcher** out);
PM_API void pm_matcher_destroy(pm_matcher* matcher);

/* *matched = 1 iff the window ending at this symbol p-matches. */
PM_API pm_status pm_matcher_step(pm_matcher* matcher, uint64_t symbol, int* matched);

/* Feeds n symbols; writes the start of every matching window (in order)
 * to starts[0..*count-1]. starts needs room for n entries. */
PM_API pm_status pm_matcher_feed(pm_matcher* matcher, const uint64_t* symbols, size_t n,
                                 uint64_t* starts, size_t* count);

PM_API pm_status pm_matcher_stats(const pm_matcher* matcher, pm_stats* out);

/* Brute-force reference: every window start where pattern p-matches text.
 * *starts is allocated with malloc (NULL when *count == 0); release with
 * pm_free. */
PM_API pm_status pm_naive_all_matches(const uint64_t* pattern, size_t m, const uint64_t* text,
                                      size_t n, uint64_t** starts, size_t* count);
PM_API void pm_free(void* p);

PM_API const char* pm_status_string(pm_status status);
PM_API const char* pm_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* PMATCH_PMATCH_H */
