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

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pshuf/random.hpp"

namespace pshuf {

enum class Preset { toy, test160, prod2048 };

inline std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "toy") return Preset::toy;
  if (name == "test160") return Preset::test160;
  if (name == "prod2048") return Preset::prod2048;
  return std::nullopt;
}

inline std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::toy: return "toy";
    case Preset::test160: return "test160";
    case Preset::prod2048: return "prod2048";
  }
  return "unknown";
}

/// Safe-prime group description: G_q is the order-q subgroup of Z_p^* with p = 2q + 1.
struct GroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class g;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

  /// Empty when every invariant holds, otherwise a description of the first violation.
  std::string violation() const {
    if (p <= 3 || q <= 1) return "modulus too small";
    if (p != 2 * q + 1) return "p != 2q + 1";
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) return "q is not prime";
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) return "p is not prime";
    if (g <= 1 || g >= p) return "generator out of range";
    mpz_class t;
    mpz_powm(t.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    if (t != 1) return "generator does not lie in the order-q subgroup";
    return {};
  }
  bool valid() const { return violation().empty(); }

  static GroupParams preset(Preset which) {
    switch (which) {
      case Preset::toy:
        return {23, 11, 2};
      case Preset::test160:
        return {mpz_class("18df064f3fac035a41409681da468ce59500949fb", 16),
                mpz_class("c6f83279fd601ad20a04b40ed234672ca804a4fd", 16), 4};
      case Preset::prod2048: {
        // RFC 3526 group 14; 2 is a quadratic residue since p = 7 mod 8.
        mpz_class p(
            "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
            "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
            "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
            "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
            "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
            "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
            "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
            "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff",
            16);
        mpz_class q = (p - 1) / 2;
        return {p, q, 2};
      }
    }
    throw std::invalid_argument("unknown preset");
  }
};

/// Element of Z_q. Constructed through a Group, which guarantees 0 <= value < q.
class Scalar {
 public:
  Scalar() = default;
  const mpz_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

 private:
  friend class Group;
  explicit Scalar(mpz_class v) : v_(std::move(v)) {}
  mpz_class v_ = 0;
};

/// Element of G_q. Constructed through a Group, which guarantees subgroup membership.
class Element {
 public:
  Element() = default;
  const mpz_class& value() const { return v_; }
  friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }

 private:
  friend class Group;
  explicit Element(mpz_class v) : v_(std::move(v)) {}
  mpz_class v_ = 1;
};

using ScalarVector = std::vector<Scalar>;
using ElementVector = std::vector<Element>;

/// Cheap-to-copy handle on validated parameters; all arithmetic goes through it.
class Group {
 public:
  explicit Group(GroupParams params) {
    if (auto why = params.violation(); !why.empty()) {
      throw std::invalid_argument("invalid group parameters: " + why);
    }
    params_ = std::make_shared<const GroupParams>(std::move(params));
  }

  static const Group& preset(Preset which) {
    // Presets are validated once per process.
    switch (which) {
      case Preset::toy: {
        static const Group g(GroupParams::preset(Preset::toy));
        return g;
      }
      case Preset::test160: {
        static const Group g(GroupParams::preset(Preset::test160));
        return g;
      }
      case Preset::prod2048: {
        static const Group g(GroupParams::preset(Preset::prod2048));
        return g;
      }
    }
    throw std::invalid_argument("unknown preset");
  }

  const GroupParams& params() const { return *params_; }
  const mpz_class& p() const { return params_->p; }
  const mpz_class& q() const { return params_->q; }

  friend bool operator==(const Group& a, const Group& b) {
    return a.params_ == b.params_ || *a.params_ == *b.params_;
  }

  // --- group G_q -----------------------------------------------------------

  Element generator() const { return Element(params_->g); }
  Element identity() const { return Element(1); }

  bool is_member(const mpz_class& x) const {
    if (x < 1 || x >= p()) return false;
    mpz_class t;
    mpz_powm(t.get_mpz_t(), x.get_mpz_t(), q().get_mpz_t(), p().get_mpz_t());
    return t == 1;
  }

  /// Throws std::domain_error when x is not in G_q.
  Element element(const mpz_class& x) const {
    if (!is_member(x)) throw std::domain_error("value is not a member of G_q");
    return Element(x);
  }

  Element mul(const Element& a, const Element& b) const {
    mpz_class r = a.v_ * b.v_;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p().get_mpz_t());
    return Element(std::move(r));
  }

  Element inv(const Element& a) const {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.v_.get_mpz_t(), p().get_mpz_t());
    return Element(std::move(r));
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  Element exp(const Element& base, const Scalar& e) const {
    if (e.v_ == 0) return identity();
    if (e.v_ == 1) return base;
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.v_.get_mpz_t(), e.v_.get_mpz_t(), p().get_mpz_t());
    return Element(std::move(r));
  }

  /// g^e
  Element exp_g(const Scalar& e) const { return exp(generator(), e); }

  // --- field Z_q -------------------------------------------------------------

  /// Throws std::domain_error when v is outside [0, q).
  Scalar scalar(const mpz_class& v) const {
    if (v < 0 || v >= q()) throw std::domain_error("value is not in Z_q");
    return Scalar(v);
  }

  /// Reduces any integer (including negatives) into Z_q.
  Scalar reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q().get_mpz_t());
    return Scalar(std::move(r));
  }
  Scalar reduce(long v) const { return reduce(mpz_class(v)); }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a.v_ + b.v_); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a.v_ - b.v_); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a.v_ * b.v_); }
  Scalar neg(const Scalar& a) const { return reduce(-a.v_); }

  /// Throws std::domain_error for zero.
  Scalar inv(const Scalar& a) const {
    if (a.is_zero()) throw std::domain_error("zero has no inverse in Z_q");
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.v_.get_mpz_t(), q().get_mpz_t());
    return Scalar(std::move(r));
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  // --- sampling ------------------------------------------------------------

  template <std::uniform_random_bit_generator Rng>
  Scalar random_scalar(Rng& rng) const {
    return Scalar(uniform_below(rng, q()));
  }

  template <std::uniform_random_bit_generator Rng>
  ScalarVector random_scalars(Rng& rng, std::size_t n) const {
    ScalarVector out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_scalar(rng));
    return out;
  }

  /// Uniform over G_q, as g^x for uniform x.
  template <std::uniform_random_bit_generator Rng>
  Element random_element(Rng& rng) const {
    return exp_g(random_scalar(rng));
  }

 private:
  std::shared_ptr<const GroupParams> params_;
};

// Vector helpers over Z_q.

inline Scalar sum(const Group& G, const ScalarVector& v) {
  mpz_class acc = 0;
  for (const auto& x : v) acc += x.value();
  return G.reduce(acc);
}

inline Scalar product(const Group& G, const ScalarVector& v) {
  Scalar acc = G.one();
  for (const auto& x : v) acc = G.mul(acc, x);
  return acc;
}

inline Element product(const Group& G, const ElementVector& v) {
  Element acc = G.identity();
  for (const auto& x : v) acc = G.mul(acc, x);
  return acc;
}

}  // namespace pshuf
