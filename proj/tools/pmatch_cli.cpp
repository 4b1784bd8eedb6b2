// pmatch: streaming parameterized matching from the command line.
//
//   pmatch match  --pattern P --text T|-   report match start positions
//   pmatch verify                          matcher vs brute force on random instances
//   pmatch bench                           per-arrival work and space metrics
//   pmatch gen    --pattern-out P --text-out T
//
// Exit codes: 0 ok, 1 usage, 2 input or alphabet error, 3 structural
// violation (or, for verify, any discrepancy).

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmatch/pmatch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitStructural = 3;

struct InputError {
  std::string message;
};

int exit_for(pm_status st) {
  switch (st) {
    case PM_OK: return kExitOk;
    case PM_ERR_CONFIG:
    case PM_ERR_USAGE: return kExitUsage;
    case PM_ERR_ALPHABET: return kExitInput;
    default: return kExitStructural;
  }
}

// Pulls symbols one at a time: bytes in raw mode, else whitespace-separated
// base-10 unsigned integers.
class SymbolReader {
 public:
  SymbolReader(std::FILE* f, bool raw, std::string name) : f_(f), raw_(raw), name_(std::move(name)) {}

  bool next(uint64_t& out) {
    if (raw_) {
      const int c = std::getc(f_);
      if (c == EOF) return finish();
      out = static_cast<unsigned char>(c);
      ++count_;
      return true;
    }
    int c;
    do c = std::getc(f_); while (c != EOF && std::isspace(c));
    if (c == EOF) return finish();
    uint64_t v = 0;
    for (; c != EOF && !std::isspace(c); c = std::getc(f_)) {
      if (c < '0' || c > '9') {
        throw InputError{name_ + ": symbol at index " + std::to_string(count_) +
                         " is not an unsigned integer (found '" + static_cast<char>(c) + "')"};
      }
      const uint64_t d = static_cast<uint64_t>(c - '0');
      if (v > (UINT64_MAX - d) / 10) {
        throw InputError{name_ + ": symbol at index " + std::to_string(count_) +
                         " does not fit in 64 bits"};
      }
      v = v * 10 + d;
    }
    out = v;
    ++count_;
    return true;
  }

  uint64_t count() const { return count_; }

 private:
  bool finish() {
    if (std::ferror(f_)) throw InputError{name_ + ": read error: " + std::strerror(errno)};
    return false;
  }

  std::FILE* f_;
  bool raw_;
  std::string name_;
  uint64_t count_ = 0;
};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f && f != stdin) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_input(const std::string& path) {
  if (path == "-") return FilePtr(stdin);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw InputError{path + ": " + std::strerror(errno)};
  return FilePtr(f);
}

std::vector<uint64_t> read_all(const std::string& path, bool raw) {
  FilePtr f = open_input(path);
  SymbolReader reader(f.get(), raw, path);
  std::vector<uint64_t> out;
  uint64_t v;
  while (reader.next(v)) out.push_back(v);
  return out;
}

struct MatcherHandle {
  pm_matcher* h = nullptr;
  ~MatcherHandle() { pm_matcher_destroy(h); }
};

pm_mode parse_mode(const std::string& s) {
  if (s == "det") return PM_MODE_DET;
  if (s == "rand") return PM_MODE_RAND;
  return PM_MODE_AUTO;
}

void print_stats(std::FILE* out, const pm_stats& st, uint64_t matches, double seconds) {
  std::fprintf(out, "engine=%s\n", st.randomized ? "randomized" : "deterministic");
  std::fprintf(out, "arrivals=%llu\n", static_cast<unsigned long long>(st.arrivals));
  std::fprintf(out, "matches=%llu\n", static_cast<unsigned long long>(matches));
  std::fprintf(out, "alphabet=%llu\n", static_cast<unsigned long long>(st.alphabet));
  std::fprintf(out, "pperiod=%llu\n", static_cast<unsigned long long>(st.pperiod));
  std::fprintf(out, "delta=%llu\n", static_cast<unsigned long long>(st.delta));
  std::fprintf(out, "levels=%llu\n", static_cast<unsigned long long>(st.levels));
  std::fprintf(out, "max_ops=%llu\n", static_cast<unsigned long long>(st.max_ops));
  std::fprintf(out, "mean_ops=%.3f\n",
               st.arrivals ? static_cast<double>(st.total_ops) / static_cast<double>(st.arrivals) : 0.0);
  std::fprintf(out, "peak_words=%llu\n", static_cast<unsigned long long>(st.peak_words));
  std::fprintf(out, "live_words=%llu\n", static_cast<unsigned long long>(st.live_words));
  std::fprintf(out, "max_buffer=%llu\n", static_cast<unsigned long long>(st.max_buffer));
  std::fprintf(out, "max_zero_queue=%llu\n", static_cast<unsigned long long>(st.max_zero_queue));
  std::fprintf(out, "max_segments=%llu\n", static_cast<unsigned long long>(st.max_segments));
  std::fprintf(out, "det_max_shifts=%llu\n", static_cast<unsigned long long>(st.det_max_shifts));
  std::fprintf(out, "structural_violations=%llu\n",
               static_cast<unsigned long long>(st.structural_violations));
  std::fprintf(out, "seconds=%.6f\n", seconds);
  std::fprintf(out, "symbols_per_second=%.0f\n",
               seconds > 0 ? static_cast<double>(st.arrivals) / seconds : 0.0);
}

// ---------------------------------------------------------------- match

struct MatchOptions {
  std::string pattern;
  std::string text = "-";
  std::string mode = "auto";
  uint64_t seed = 1;
  uint32_t prime_bits = 61;
  std::optional<uint64_t> alphabet_size;
  bool general = false;
  bool raw = false;
  bool stats = false;
  bool unbuffered = false;
};

int run_match(const MatchOptions& o) {
  const std::vector<uint64_t> pattern = read_all(o.pattern, o.raw);
  if (pattern.empty()) {
    std::fprintf(stderr, "pmatch: %s: pattern is empty\n", o.pattern.c_str());
    return kExitInput;
  }
  pm_config cfg;
  pm_config_init(&cfg);
  cfg.prime_bits = o.prime_bits;
  cfg.seed = o.seed;
  cfg.mode = parse_mode(o.mode);
  cfg.track_words = o.stats ? 1 : 0;
  // Token streams without a declared dense alphabet go through the filter.
  uint64_t sigma = 0;
  if (o.general) {
    cfg.general_alphabet = 1;
  } else if (o.alphabet_size) {
    sigma = *o.alphabet_size;
  } else if (o.raw) {
    sigma = 256;
  } else {
    cfg.general_alphabet = 1;
  }

  MatcherHandle m;
  pm_status st = pm_matcher_create(pattern.data(), pattern.size(), sigma, &cfg, &m.h);
  if (st != PM_OK) {
    std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
    return exit_for(st);
  }

  FilePtr in = open_input(o.text);
  SymbolReader reader(in.get(), o.raw, o.text == "-" ? "<stdin>" : o.text);
  static char outbuf[1 << 16];
  if (!o.unbuffered) std::setvbuf(stdout, outbuf, _IOFBF, sizeof outbuf);

  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t mlen = pattern.size();
  uint64_t matches = 0;
  uint64_t v;
  int rc = kExitOk;
  while (reader.next(v)) {
    int hit = 0;
    st = pm_matcher_step(m.h, v, &hit);
    if (st != PM_OK) {
      std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
      rc = exit_for(st);
      break;
    }
    if (hit) {
      ++matches;
      std::fprintf(stdout, "%llu\n", static_cast<unsigned long long>(reader.count() - mlen));
      if (o.unbuffered) std::fflush(stdout);
    }
  }
  std::fflush(stdout);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.stats) {
    pm_stats s;
    if (pm_matcher_stats(m.h, &s) == PM_OK) print_stats(stderr, s, matches, secs);
  }
  return rc;
}

// ---------------------------------------------------------------- generators

using Rng = std::mt19937_64;

std::vector<uint64_t> gen_random(Rng& rng, uint64_t len, uint64_t sigma) {
  std::uniform_int_distribution<uint64_t> d(0, sigma - 1);
  std::vector<uint64_t> out(len);
  for (auto& v : out) v = d(rng);
  return out;
}

std::vector<uint64_t> gen_periodic(Rng& rng, uint64_t len, uint64_t period, uint64_t sigma) {
  const auto block = gen_random(rng, period, sigma);
  std::vector<uint64_t> out(len);
  for (uint64_t i = 0; i < len; ++i) out[i] = block[i % period];
  return out;
}

void gen_plant(Rng& rng, std::vector<uint64_t>& text, const std::vector<uint64_t>& p,
               uint64_t sigma, uint64_t count) {
  if (p.size() > text.size()) return;
  std::uniform_int_distribution<uint64_t> at(0, text.size() - p.size());
  std::vector<uint64_t> perm(sigma);
  for (uint64_t c = 0; c < count; ++c) {
    std::iota(perm.begin(), perm.end(), uint64_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const uint64_t start = at(rng);
    for (uint64_t j = 0; j < p.size(); ++j) text[start + j] = perm[p[j]];
  }
}

struct Instance {
  std::vector<uint64_t> pattern;
  std::vector<uint64_t> text;
};

struct GenOptions {
  uint64_t m = 1024;
  uint64_t n = 4096;
  uint64_t sigma = 4;
  uint64_t seed = 1;
  std::string kind = "planted";  // random | planted | periodic | unary
  uint64_t period = 0;           // periodic kind; 0 picks just above 3*sigma*log m
  uint64_t plants = 4;
};

uint64_t ceil_log2(uint64_t m) {
  uint64_t b = 0;
  while ((uint64_t{1} << b) < m) ++b;
  return b;
}

Instance generate(const GenOptions& g) {
  Rng rng(g.seed);
  Instance in;
  if (g.kind == "unary") {
    in.pattern.assign(g.m, 0);
    in.text = gen_random(rng, g.n, g.sigma);
    gen_plant(rng, in.text, in.pattern, g.sigma, g.plants);
  } else if (g.kind == "periodic") {
    const uint64_t q = g.period ? g.period : 3 * g.sigma * ceil_log2(g.m) + 1;
    in.pattern = gen_periodic(rng, g.m, q, g.sigma);
    in.text.resize(g.n);
    for (uint64_t i = 0; i < g.n; ++i) in.text[i] = in.pattern[i % q];
  } else {
    in.pattern = gen_random(rng, g.m, g.sigma);
    in.text = gen_random(rng, g.n, g.sigma);
    if (g.kind == "planted") gen_plant(rng, in.text, in.pattern, g.sigma, g.plants);
  }
  return in;
}

void write_tokens(const std::string& path, const std::vector<uint64_t>& s) {
  std::ofstream out(path);
  if (!out) throw InputError{path + ": cannot open for writing"};
  for (std::size_t i = 0; i < s.size(); ++i) out << s[i] << (i + 1 == s.size() || i % 32 == 31 ? '\n' : ' ');
  if (!out) throw InputError{path + ": write failed"};
}

int run_gen(const GenOptions& g, const std::string& pattern_out, const std::string& text_out) {
  const Instance in = generate(g);
  write_tokens(pattern_out, in.pattern);
  write_tokens(text_out, in.text);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  uint64_t trials = 200;
  uint64_t min_m = 1;
  uint64_t max_m = 300;
  std::vector<uint64_t> sigmas{1, 2, 4, 8, 16};
  uint64_t text_factor = 10;
  uint64_t seed = 1;
  std::string mode = "auto";
  uint32_t prime_bits = 61;
};

int run_verify(const VerifyOptions& o) {
  Rng rng(o.seed);
  uint64_t discrepancies = 0, structural = 0, randomized = 0, matches = 0, config_skips = 0;
  for (uint64_t t = 0; t < o.trials; ++t) {
    GenOptions g;
    g.sigma = o.sigmas[t % o.sigmas.size()];
    g.m = std::uniform_int_distribution<uint64_t>(o.min_m, o.max_m)(rng);
    g.n = o.text_factor * g.m;
    g.seed = rng();
    static const char* kinds[] = {"planted", "random", "periodic", "unary"};
    g.kind = kinds[t % 4];
    g.period = std::uniform_int_distribution<uint64_t>(1, std::max<uint64_t>(1, g.m / 4))(rng);
    const Instance in = generate(g);

    pm_config cfg;
    pm_config_init(&cfg);
    cfg.mode = parse_mode(o.mode);
    cfg.prime_bits = o.prime_bits;
    cfg.seed = rng();
    MatcherHandle m;
    pm_status st = pm_matcher_create(in.pattern.data(), in.pattern.size(), g.sigma, &cfg, &m.h);
    if (st == PM_ERR_CONFIG && cfg.mode == PM_MODE_RAND) {
      ++config_skips;  // pattern not eligible for the forced engine
      continue;
    }
    if (st != PM_OK) {
      std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
      return exit_for(st);
    }
    std::vector<uint64_t> got(in.text.size());
    size_t count = 0;
    st = pm_matcher_feed(m.h, in.text.data(), in.text.size(), got.data(), &count);
    if (st == PM_ERR_STRUCTURAL) {
      ++structural;
      continue;
    }
    if (st != PM_OK) {
      std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
      return exit_for(st);
    }
    got.resize(count);
    uint64_t* ref = nullptr;
    size_t ref_count = 0;
    pm_naive_all_matches(in.pattern.data(), in.pattern.size(), in.text.data(), in.text.size(), &ref,
                         &ref_count);
    const bool same = std::equal(got.begin(), got.end(), ref, ref + ref_count) && count == ref_count;
    pm_free(ref);
    if (!same) {
      ++discrepancies;
      std::fprintf(stderr, "discrepancy: trial=%llu m=%llu sigma=%llu kind=%s\n",
                   static_cast<unsigned long long>(t), static_cast<unsigned long long>(g.m),
                   static_cast<unsigned long long>(g.sigma), g.kind.c_str());
    }
    pm_stats s;
    pm_matcher_stats(m.h, &s);
    randomized += s.randomized ? 1 : 0;
    matches += count;
  }
  std::printf("trials=%llu\nrandomized=%llu\nskipped_ineligible=%llu\nmatches=%llu\n"
              "discrepancies=%llu\nstructural_violations=%llu\nresult=%s\n",
              static_cast<unsigned long long>(o.trials), static_cast<unsigned long long>(randomized),
              static_cast<unsigned long long>(config_skips), static_cast<unsigned long long>(matches),
              static_cast<unsigned long long>(discrepancies),
              static_cast<unsigned long long>(structural),
              discrepancies == 0 && structural == 0 ? "pass" : "fail");
  return discrepancies == 0 && structural == 0 ? kExitOk : kExitStructural;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  GenOptions gen;
  std::string mode = "auto";
  uint32_t prime_bits = 61;
  bool track_words = true;
};

int run_bench(const BenchOptions& o) {
  const Instance in = generate(o.gen);
  pm_config cfg;
  pm_config_init(&cfg);
  cfg.mode = parse_mode(o.mode);
  cfg.prime_bits = o.prime_bits;
  cfg.seed = o.gen.seed;
  cfg.track_words = o.track_words ? 1 : 0;
  MatcherHandle m;
  pm_status st = pm_matcher_create(in.pattern.data(), in.pattern.size(), o.gen.sigma, &cfg, &m.h);
  if (st != PM_OK) {
    std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
    return exit_for(st);
  }
  std::vector<uint64_t> starts(in.text.size());
  size_t count = 0;
  const auto t0 = std::chrono::steady_clock::now();
  st = pm_matcher_feed(m.h, in.text.data(), in.text.size(), starts.data(), &count);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  pm_stats s;
  pm_matcher_stats(m.h, &s);
  std::printf("m=%llu\nn=%llu\n", static_cast<unsigned long long>(in.pattern.size()),
              static_cast<unsigned long long>(in.text.size()));
  print_stats(stdout, s, count, secs);
  if (st != PM_OK) {
    std::fprintf(stderr, "pmatch: %s\n", pm_last_error());
    return exit_for(st);
  }
  return kExitOk;
}

void add_gen_flags(CLI::App* sub, GenOptions& g) {
  sub->add_option("-m,--m", g.m, "pattern length")->check(CLI::PositiveNumber);
  sub->add_option("-n,--n", g.n, "text length");
  sub->add_option("--alphabet-size", g.sigma, "dense alphabet size")->check(CLI::PositiveNumber);
  sub->add_option("--seed", g.seed, "generator seed");
  sub->add_option("--kind", g.kind, "random | planted | periodic | unary")
      ->check(CLI::IsMember({"random", "planted", "periodic", "unary"}));
  sub->add_option("--period", g.period, "block length for --kind periodic (0: just above 3*delta)");
  sub->add_option("--plants", g.plants, "planted copies for --kind planted/unary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming parameterized pattern matching"};
  app.require_subcommand(1);

  MatchOptions mo;
  CLI::App* match = app.add_subcommand("match", "report start positions of p-matches in a stream");
  match->add_option("--pattern", mo.pattern, "pattern file")->required();
  match->add_option("--text", mo.text, "text file, or - for stdin");
  match->add_option("--mode", mo.mode, "auto | det | rand")
      ->check(CLI::IsMember({"auto", "det", "rand"}));
  match->add_option("--seed", mo.seed, "fingerprint seed");
  match->add_option("--prime-bits", mo.prime_bits, "fingerprint prime width")
      ->check(CLI::Range(16, 62));
  match->add_option("--alphabet-size", mo.alphabet_size, "dense alphabet size (symbols 0..N-1)")
      ->check(CLI::PositiveNumber);
  match->add_flag("--general-alphabet", mo.general, "arbitrary symbols via the recency filter");
  match->add_flag("--raw", mo.raw, "every input byte is one symbol");
  match->add_flag("--stats", mo.stats, "key=value metrics on stderr");
  match->add_flag("--unbuffered", mo.unbuffered, "flush each match before reading on");

  VerifyOptions vo;
  CLI::App* verify = app.add_subcommand("verify", "check the matcher against brute force");
  verify->add_option("--trials", vo.trials, "number of instances");
  verify->add_option("--min-m", vo.min_m, "smallest pattern length")->check(CLI::PositiveNumber);
  verify->add_option("--max-m", vo.max_m, "largest pattern length")->check(CLI::PositiveNumber);
  verify->add_option("--alphabet-sizes", vo.sigmas, "alphabet sizes to cycle through")
      ->check(CLI::PositiveNumber);
  verify->add_option("--text-factor", vo.text_factor, "text length as a multiple of m")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vo.seed, "instance seed");
  verify->add_option("--mode", vo.mode, "auto | det | rand")
      ->check(CLI::IsMember({"auto", "det", "rand"}));
  verify->add_option("--prime-bits", vo.prime_bits, "fingerprint prime width")
      ->check(CLI::Range(16, 62));

  BenchOptions bo;
  CLI::App* bench = app.add_subcommand("bench", "run one generated instance and print metrics");
  add_gen_flags(bench, bo.gen);
  bench->add_option("--mode", bo.mode, "auto | det | rand")
      ->check(CLI::IsMember({"auto", "det", "rand"}));
  bench->add_option("--prime-bits", bo.prime_bits, "fingerprint prime width")
      ->check(CLI::Range(16, 62));
  bool no_words = false;
  bench->add_flag("--no-track-words", no_words, "skip the peak-words gauge");

  GenOptions go;
  std::string pattern_out, text_out;
  CLI::App* gen = app.add_subcommand("gen", "write a generated instance as token files");
  add_gen_flags(gen, go);
  gen->add_option("--pattern-out", pattern_out, "pattern file to write")->required();
  gen->add_option("--text-out", text_out, "text file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*match) return run_match(mo);
    if (*verify) {
      if (vo.min_m > vo.max_m) {
        std::fprintf(stderr, "pmatch: --min-m exceeds --max-m\n");
        return kExitUsage;
      }
      return run_verify(vo);
    }
    if (*bench) {
      bo.track_words = !no_words;
      return run_bench(bo);
    }
    if (*gen) return run_gen(go, pattern_out, text_out);
  } catch (const InputError& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "pmatch: %s\n", e.message.c_str());
    return kExitInput;
  }
  return kExitUsage;
}
