// Exercises the shared library strictly through its C header.
#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "pmatch/pmatch.h"

namespace {

std::vector<uint64_t> feed_all(pm_matcher* h, const std::vector<uint64_t>& t) {
  std::vector<uint64_t> starts(t.size());
  size_t count = 0;
  REQUIRE(pm_matcher_feed(h, t.data(), t.size(), starts.data(), &count) == PM_OK);
  starts.resize(count);
  return starts;
}

std::vector<uint64_t> oracle(const std::vector<uint64_t>& p, const std::vector<uint64_t>& t) {
  uint64_t* buf = nullptr;
  size_t count = 0;
  REQUIRE(pm_naive_all_matches(p.data(), p.size(), t.data(), t.size(), &buf, &count) == PM_OK);
  std::vector<uint64_t> out(buf, buf + count);
  pm_free(buf);
  return out;
}

}  // namespace

TEST_CASE("config defaults") {
  pm_config cfg;
  std::memset(&cfg, 0xff, sizeof cfg);
  pm_config_init(&cfg);
  CHECK(cfg.prime_bits == 61);
  CHECK(cfg.seed == 1);
  CHECK(cfg.mode == PM_MODE_AUTO);
  CHECK(cfg.general_alphabet == 0);
  CHECK(cfg.track_words == 0);
}

TEST_CASE("step and feed report the same matches as the reference") {
  const std::vector<uint64_t> p{1, 2, 2, 3, 1};
  const std::vector<uint64_t> t{2, 4, 4, 3, 2, 4, 4, 3};
  pm_matcher* h = nullptr;
  REQUIRE(pm_matcher_create(p.data(), p.size(), 5, nullptr, &h) == PM_OK);
  CHECK(feed_all(h, t) == oracle(p, t));
  CHECK(oracle(p, t) == std::vector<uint64_t>{0});
  pm_stats st;
  REQUIRE(pm_matcher_stats(h, &st) == PM_OK);
  CHECK(st.arrivals == t.size());
  CHECK(st.randomized == 0);
  CHECK(st.alphabet == 5);
  pm_matcher_destroy(h);
}

TEST_CASE("error codes and messages") {
  const std::vector<uint64_t> p{0, 1, 0};
  pm_matcher* h = nullptr;
  CHECK(pm_matcher_create(p.data(), p.size(), 2, nullptr, nullptr) == PM_ERR_USAGE);
  CHECK(pm_matcher_create(p.data(), 0, 2, nullptr, &h) == PM_ERR_CONFIG);
  CHECK(h == nullptr);
  CHECK(pm_matcher_create(p.data(), p.size(), 1, nullptr, &h) == PM_ERR_CONFIG);
  CHECK(std::strlen(pm_last_error()) > 0);

  pm_config cfg;
  pm_config_init(&cfg);
  cfg.mode = PM_MODE_RAND;
  CHECK(pm_matcher_create(p.data(), p.size(), 2, &cfg, &h) == PM_ERR_CONFIG);
  cfg.mode = PM_MODE_AUTO;
  cfg.prime_bits = 8;
  CHECK(pm_matcher_create(p.data(), p.size(), 2, &cfg, &h) == PM_ERR_CONFIG);

  REQUIRE(pm_matcher_create(p.data(), p.size(), 2, nullptr, &h) == PM_OK);
  int matched = 0;
  CHECK(pm_matcher_step(h, 5, &matched) == PM_ERR_ALPHABET);
  CHECK(std::strstr(pm_last_error(), "index 0") != nullptr);
  CHECK(pm_matcher_step(h, 1, nullptr) == PM_ERR_USAGE);
  CHECK(pm_matcher_step(nullptr, 1, &matched) == PM_ERR_USAGE);
  pm_matcher_destroy(h);
  pm_matcher_destroy(nullptr);

  CHECK(std::strcmp(pm_status_string(PM_OK), "ok") == 0);
  CHECK(std::strcmp(pm_status_string(PM_ERR_STRUCTURAL), "structural violation") == 0);
}

TEST_CASE("general alphabet routes through the filter") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<uint64_t> p(20 + rng() % 30);
    for (auto& v : p) v = (rng() % 5) * 1000003;
    std::vector<uint64_t> t(600);
    for (auto& v : t) v = (rng() % 7) * 1000003 + (rng() % 2);
    for (int k = 0; k < 3; ++k) {
      const size_t at = rng() % (t.size() - p.size());
      const uint64_t shift = rng();
      for (size_t j = 0; j < p.size(); ++j) t[at + j] = p[j] ^ shift;
    }
    pm_config cfg;
    pm_config_init(&cfg);
    cfg.general_alphabet = 1;
    pm_matcher* h = nullptr;
    REQUIRE(pm_matcher_create(p.data(), p.size(), 0, &cfg, &h) == PM_OK);
    REQUIRE(feed_all(h, t) == oracle(p, t));
    pm_matcher_destroy(h);
  }
}

TEST_CASE("randomized engine through the C interface") {
  std::mt19937_64 rng(13);
  std::vector<uint64_t> p(3000);
  for (auto& v : p) v = rng() % 2;
  std::vector<uint64_t> t(12000);
  for (auto& v : t) v = rng() % 2;
  for (size_t j = 0; j < p.size(); ++j) t[5000 + j] = 1 - p[j];
  pm_config cfg;
  pm_config_init(&cfg);
  cfg.mode = PM_MODE_RAND;
  cfg.track_words = 1;
  pm_matcher* h = nullptr;
  REQUIRE(pm_matcher_create(p.data(), p.size(), 2, &cfg, &h) == PM_OK);
  CHECK(feed_all(h, t) == oracle(p, t));
  pm_stats st;
  REQUIRE(pm_matcher_stats(h, &st) == PM_OK);
  CHECK(st.randomized == 1);
  CHECK(st.structural_violations == 0);
  CHECK(st.peak_words >= st.live_words);
  CHECK(st.prime == (uint64_t{1} << 61) - 1);
  pm_matcher_destroy(h);
}

TEST_CASE("peak words include the alphabet filter") {
  const std::vector<uint64_t> p = {7, 900, 900, 3, 7};
  const std::vector<uint64_t> t = {5, 11, 11, 2, 5, 1 << 20, 42, 42};
  pm_config cfg;
  pm_config_init(&cfg);
  cfg.general_alphabet = 1;
  cfg.track_words = 1;
  pm_matcher* h = nullptr;
  REQUIRE(pm_matcher_create(p.data(), p.size(), 0, &cfg, &h) == PM_OK);
  CHECK(feed_all(h, t) == oracle(p, t));
  pm_stats st;
  REQUIRE(pm_matcher_stats(h, &st) == PM_OK);
  CHECK(st.peak_words >= st.live_words);
  pm_matcher_destroy(h);
}
