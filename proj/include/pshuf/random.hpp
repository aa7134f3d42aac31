// Copyright 2026 The pshuf Authors.
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
#include <concepts>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pshuf/hash.hpp"

namespace pshuf {

/// Deterministic bit generator: SHA-256 in counter mode over a seed.
///
/// Every random choice the library makes is drawn from one of these, so a
/// fixed seed reproduces shuffles, proofs and simulations exactly. Satisfies
/// std::uniform_random_bit_generator.
class Drbg {
 public:
  using result_type = std::uint64_t;

  explicit Drbg(std::span<const std::uint8_t> seed) : seed_(seed.begin(), seed.end()) {}
  explicit Drbg(std::string_view seed)
      : seed_(reinterpret_cast<const std::uint8_t*>(seed.data()),
              reinterpret_cast<const std::uint8_t*>(seed.data()) + seed.size()) {}
  explicit Drbg(std::uint64_t seed) {
    for (int i = 7; i >= 0; --i) seed_.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    result_type v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
    return v;
  }

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = next_byte();
  }

 private:
  std::uint8_t next_byte() {
    if (pos_ == block_.size()) refill();
    return block_[pos_++];
  }
  void refill() {
    Sha256 h;
    h.update("PSHUF/drbg").update(seed_);
    h.update_u32(static_cast<std::uint32_t>(counter_ >> 32));
    h.update_u32(static_cast<std::uint32_t>(counter_));
    block_ = h.finish();
    ++counter_;
    pos_ = 0;
  }

  std::vector<std::uint8_t> seed_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t pos_ = block_.size();
};

template <std::uniform_random_bit_generator Rng>
void fill_bytes(Rng& rng, std::span<std::uint8_t> out) {
  if constexpr (requires { rng.fill(out); }) {
    rng.fill(out);
  } else {
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  }
}

/// Uniform integer in [0, bound) by rejection sampling on bit length.
template <std::uniform_random_bit_generator Rng>
mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t bytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(bytes * 8 - bits);
  std::vector<std::uint8_t> buf(bytes);
  for (;;) {
    fill_bytes(rng, buf);
    buf[0] &= static_cast<std::uint8_t>(0xffu >> excess);
    mpz_class v = from_big_endian(buf);
    if (v < bound) return v;
  }
}

/// Uniform index in [0, bound).
template <std::uniform_random_bit_generator Rng>
std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(uniform_below(rng, mpz_class(static_cast<unsigned long>(bound))).get_ui());
}

}  // namespace pshuf
