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

#include "queso/common.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace queso {

LogLevel log_level() {
  static LogLevel level = [] {
    const char *env = std::getenv("QUESO_LOG");
    if (!env) return LogLevel::Error;
    if (std::strcmp(env, "off") == 0) return LogLevel::Off;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    return LogLevel::Error;
  }();
  return level;
}

void log_line(LogLevel level, const std::string &msg) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const char *tag = level == LogLevel::Error  ? "error"
                    : level == LogLevel::Info ? "info"
                                              : "debug";
  std::fprintf(stderr, "queso[%s] %s\n", tag, msg.c_str());
}

namespace {
constexpr unsigned __int128 fnv_offset() {
  // FNV-1a 128-bit offset basis: 0x6c62272e07bb014262b821756295c58d
  return (static_cast<unsigned __int128>(0x6c62272e07bb0142ULL) << 64) |
         0x62b821756295c58dULL;
}
constexpr unsigned __int128 fnv_prime() {
  // FNV 128-bit prime: 2^88 + 2^8 + 0x3b
  return (static_cast<unsigned __int128>(1) << 88) | 0x13bULL;
}
}  // namespace

DigestBuilder::DigestBuilder() : state_(fnv_offset()) {}

void DigestBuilder::add_byte(std::uint8_t b) {
  state_ ^= b;
  state_ *= fnv_prime();
}

void DigestBuilder::add_bytes(const void *data, std::size_t len) {
  const auto *p = static_cast<const std::uint8_t *>(data);
  for (std::size_t i = 0; i < len; ++i) add_byte(p[i]);
}

void DigestBuilder::add_u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(v >> (8 * i)));
}

void DigestBuilder::add_string(const std::string &s) {
  add_u64(s.size());
  add_bytes(s.data(), s.size());
}

Digest DigestBuilder::finish() const {
  Digest d;
  d.hi = static_cast<std::uint64_t>(state_ >> 64);
  d.lo = static_cast<std::uint64_t>(state_);
  return d;
}

std::string Digest::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

std::uint64_t Rng::split_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::next_u64() {
  // xorshift64* keeps the stream independent of libstdc++ internals.
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 0x2545f4914f6cdd1dULL;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw InternalError("Rng::next_below(0)");
  // Rejection sampling; unbiased.
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit || limit == 0) return v % n;
  }
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

std::uint64_t Rng::derive(std::uint64_t salt) const {
  return split_mix(state_ ^ split_mix(salt));
}

int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace queso
