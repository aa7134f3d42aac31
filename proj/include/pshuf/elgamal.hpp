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

#include <stdexcept>
#include <vector>

#include "pshuf/group.hpp"

namespace pshuf {

struct KeyPair {
  Element pk;
  Scalar sk;
};

struct Ciphertext {
  Element a;  // g^r
  Element b;  // pk^r m
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Width-w tuple of ciphertexts shuffled as one unit.
using CiphertextVector = std::vector<Ciphertext>;

template <std::uniform_random_bit_generator Rng>
KeyPair keygen(const Group& G, Rng& rng) {
  Scalar sk = G.random_scalar(rng);
  return {G.exp_g(sk), sk};
}

inline KeyPair keypair_from_secret(const Group& G, const Scalar& sk) { return {G.exp_g(sk), sk}; }

/// (g^r, pk^r m). Throws std::domain_error when m is not in G_q.
inline Ciphertext enc(const Group& G, const Element& pk, const Element& m, const Scalar& r) {
  if (!G.is_member(m.value())) throw std::domain_error("plaintext is not a member of G_q");
  return {G.exp_g(r), G.mul(G.exp(pk, r), m)};
}

/// Test oracle only; the proving and verifying paths never decrypt.
inline Element dec(const Group& G, const Scalar& sk, const Ciphertext& e) {
  return G.div(e.b, G.exp(e.a, sk));
}

/// (a g^r, b pk^r)
inline Ciphertext reenc(const Group& G, const Element& pk, const Ciphertext& e, const Scalar& r) {
  return {G.mul(e.a, G.exp_g(r)), G.mul(e.b, G.exp(pk, r))};
}

inline CiphertextVector enc_vec(const Group& G, const Element& pk, const ElementVector& m, const ScalarVector& r) {
  if (m.size() != r.size()) throw std::invalid_argument("enc_vec: width mismatch");
  CiphertextVector out;
  out.reserve(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) out.push_back(enc(G, pk, m[k], r[k]));
  return out;
}

inline CiphertextVector reenc_vec(const Group& G, const Element& pk, const CiphertextVector& e, const ScalarVector& r) {
  if (e.size() != r.size()) throw std::invalid_argument("reenc_vec: width mismatch");
  CiphertextVector out;
  out.reserve(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) out.push_back(reenc(G, pk, e[k], r[k]));
  return out;
}

/// Encryption of the all-ones plaintext vector: slot k is (g^{r_k}, pk^{r_k}).
inline CiphertextVector enc_one(const Group& G, const Element& pk, const ScalarVector& r) {
  CiphertextVector out;
  out.reserve(r.size());
  for (const auto& rk : r) out.push_back({G.exp_g(rk), G.exp(pk, rk)});
  return out;
}

inline CiphertextVector cmul(const Group& G, const CiphertextVector& x, const CiphertextVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("cmul: width mismatch");
  CiphertextVector out;
  out.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back({G.mul(x[k].a, y[k].a), G.mul(x[k].b, y[k].b)});
  return out;
}

inline CiphertextVector cexp(const Group& G, const CiphertextVector& x, const Scalar& e) {
  CiphertextVector out;
  out.reserve(x.size());
  for (const auto& slot : x) out.push_back({G.exp(slot.a, e), G.exp(slot.b, e)});
  return out;
}

/// Width-w vector of (1, 1).
inline CiphertextVector cidentity(const Group& G, std::size_t width) {
  return CiphertextVector(width, Ciphertext{G.identity(), G.identity()});
}

/// prod_i x_i^{e_i}, slot-wise.
inline CiphertextVector cmulti_exp(const Group& G, const std::vector<CiphertextVector>& x, const ScalarVector& e,
                                   std::size_t width) {
  if (x.size() != e.size()) throw std::invalid_argument("cmulti_exp: length mismatch");
  CiphertextVector acc = cidentity(G, width);
  for (std::size_t i = 0; i < x.size(); ++i) acc = cmul(G, acc, cexp(G, x[i], e[i]));
  return acc;
}

}  // namespace pshuf
