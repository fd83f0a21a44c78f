// Copyright 2026 The queso authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace queso {

constexpr const char *kVersion = "0.1.0";

/** Error in user-provided input (files, flags, circuit text). */
class UserError : public std::runtime_error {
 public:
  explicit UserError(const std::string &msg) : std::runtime_error(msg) {}
};

/** Violated internal invariant. */
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string &msg) : std::logic_error(msg) {}
};

// ---------------------------------------------------------------------------
// Logging. Level comes from the QUESO_LOG environment variable:
// off | error | info | debug (default: error).

enum class LogLevel { Off = 0, Error = 1, Info = 2, Debug = 3 };

LogLevel log_level();
void log_line(LogLevel level, const std::string &msg);

inline void log_info(const std::string &msg) { log_line(LogLevel::Info, msg); }
inline void log_debug(const std::string &msg) { log_line(LogLevel::Debug, msg); }
inline void log_error(const std::string &msg) { log_line(LogLevel::Error, msg); }

// ---------------------------------------------------------------------------
// 128-bit FNV-1a digest. Stable across runs and platforms.

struct Digest {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  bool operator==(const Digest &o) const { return hi == o.hi && lo == o.lo; }
  bool operator!=(const Digest &o) const { return !(*this == o); }
  bool operator<(const Digest &o) const {
    return hi != o.hi ? hi < o.hi : lo < o.lo;
  }
  std::string hex() const;
};

class DigestBuilder {
 public:
  DigestBuilder();
  void add_byte(std::uint8_t b);
  void add_bytes(const void *data, std::size_t len);
  void add_u64(std::uint64_t v);
  void add_i64(std::int64_t v) { add_u64(static_cast<std::uint64_t>(v)); }
  void add_string(const std::string &s);
  Digest finish() const;

 private:
  unsigned __int128 state_;
};

struct DigestHash {
  std::size_t operator()(const Digest &d) const {
    return static_cast<std::size_t>(d.hi ^ (d.lo * 0x9e3779b97f4a7c15ULL));
  }
};

// ---------------------------------------------------------------------------
// Deterministic RNG. std::mt19937_64 output is fully specified by the
// standard, but the distributions are not, so raw draws only.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(split_mix(seed)) {}

  std::uint64_t next_u64();
  /// Uniform in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);
  /// Uniform double in [0, 1).
  double next_double();

  /// Derives an independent stream (for per-stratum / per-worker seeds).
  std::uint64_t derive(std::uint64_t salt) const;

 private:
  static std::uint64_t split_mix(std::uint64_t x);
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Order-preserving parallel map. Results are identical for any job count.

template <typename T, typename F>
auto parallel_map(const std::vector<T> &items, int jobs, F f)
    -> std::vector<decltype(f(items[0]))> {
  using R = decltype(f(items[0]));
  std::vector<R> out(items.size());
  if (jobs <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::size_t n_threads = std::min<std::size_t>(jobs, items.size());
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    threads.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < items.size(); i += n_threads)
          out[i] = f(items[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &th : threads) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int default_jobs();

}  // namespace queso
