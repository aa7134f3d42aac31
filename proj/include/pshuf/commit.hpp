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
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "pshuf/group.hpp"
#include "pshuf/hash.hpp"
#include "pshuf/matrix.hpp"

namespace pshuf {

/// Commitment parameters h, h_1, ..., h_N.
class CommitmentKey {
 public:
  CommitmentKey(Group group, Element h, ElementVector basis)
      : group_(std::move(group)), h_(std::move(h)), basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("commitment key needs N >= 1");
    std::vector<const Element*> all{&h_};
    for (const auto& b : basis_) all.push_back(&b);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (*all[i] == group_.identity()) throw std::invalid_argument("commitment key element is 1");
      if (!group_.is_member(all[i]->value())) throw std::invalid_argument("commitment key element not in G_q");
      for (std::size_t j = 0; j < i; ++j)
        if (*all[i] == *all[j]) throw std::invalid_argument("commitment key elements not distinct");
    }
  }

  const Group& group() const { return group_; }
  const Element& h() const { return h_; }
  /// h_{i+1} in one-based notation.
  const Element& basis(std::size_t i) const { return basis_.at(i); }
  const ElementVector& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  friend bool operator==(const CommitmentKey& a, const CommitmentKey& b) {
    return a.group_ == b.group_ && a.h_ == b.h_ && a.basis_ == b.basis_;
  }

 private:
  Group group_;
  Element h_;
  ElementVector basis_;
};

/// Hash-to-group derivation of h (index 0) and h_1..h_N (indices 1..N).
///
/// Candidate for index i, attempt k: the SHA-256 blocks
/// H("PSHUF/ck" | seed | BE32(i) | BE32(k) | BE32(b)) for b = 0, 1, ... are
/// concatenated to at least bits(p) + 128 bits, reduced mod p and squared.
/// Candidates equal to 0, 1 or an earlier element are rejected.
inline CommitmentKey gen_commit_key(const Group& G, std::size_t n, std::span<const std::uint8_t> seed) {
  if (n == 0) throw std::invalid_argument("commitment key needs N >= 1");
  // G_q has q - 1 non-identity elements.
  if (mpz_class(static_cast<unsigned long>(n + 1)) > G.q() - 1) {
    throw std::invalid_argument("group too small for a commitment key of this size");
  }
  const std::size_t blocks = (mpz_sizeinbase(G.p().get_mpz_t(), 2) + 128 + 255) / 256;
  ElementVector out;
  out.reserve(n + 1);
  for (std::uint32_t index = 0; index <= n; ++index) {
    for (std::uint32_t attempt = 0;; ++attempt) {
      std::vector<std::uint8_t> bytes;
      for (std::uint32_t b = 0; b < blocks; ++b) {
        Sha256 h;
        h.update("PSHUF/ck").update(seed).update_u32(index).update_u32(attempt).update_u32(b);
        const auto d = h.finish();
        bytes.insert(bytes.end(), d.begin(), d.end());
      }
      mpz_class x = from_big_endian(bytes) % G.p();
      mpz_class y = (x * x) % G.p();
      if (y <= 1) continue;
      Element e = G.element(y);
      bool fresh = true;
      for (const auto& prev : out) fresh = fresh && !(prev == e);
      if (!fresh) continue;
      out.push_back(std::move(e));
      break;
    }
  }
  Element h = out.front();
  out.erase(out.begin());
  return CommitmentKey(G, std::move(h), std::move(out));
}

inline CommitmentKey gen_commit_key(const Group& G, std::size_t n, std::string_view seed) {
  return gen_commit_key(G, n, std::span(reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size()));
}

/// Pedersen commitment h^r base^m.
inline Element pc(const CommitmentKey& key, const Scalar& m, const Scalar& r, const Element& base) {
  const Group& G = key.group();
  return G.mul(G.exp(key.h(), r), G.exp(base, m));
}

/// Pedersen commitment against h_1.
inline Element pc(const CommitmentKey& key, const Scalar& m, const Scalar& r) {
  return pc(key, m, r, key.basis(0));
}

/// Extended Pedersen commitment h^r prod_i h_i^{m_i}. |m| must equal N.
inline Element epc(const CommitmentKey& key, const ScalarVector& m, const Scalar& r) {
  if (m.size() != key.size()) throw std::invalid_argument("epc: vector length differs from key size");
  const Group& G = key.group();
  Element acc = G.exp(key.h(), r);
  for (std::size_t i = 0; i < m.size(); ++i) acc = G.mul(acc, G.exp(key.basis(i), m[i]));
  return acc;
}

/// Column-wise commitment: c_i = epc(M_i, r_i).
inline ElementVector commit_matrix(const CommitmentKey& key, const Matrix& M, const ScalarVector& r) {
  if (M.rows() != key.size() || M.cols() != key.size() || r.size() != key.size()) {
    throw std::invalid_argument("commit_matrix: dimensions differ from key size");
  }
  ElementVector c;
  c.reserve(M.cols());
  for (std::size_t i = 0; i < M.cols(); ++i) c.push_back(epc(key, M.column(i), r[i]));
  return c;
}

/// Two distinct openings of a single extended Pedersen commitment.
struct CommitmentBreak {
  ScalarVector m;
  Scalar r;
  ScalarVector m_prime;
  Scalar r_prime;
};

inline bool verify_commitment_break(const CommitmentKey& key, const CommitmentBreak& brk) {
  if (brk.m.size() != key.size() || brk.m_prime.size() != key.size()) return false;
  if (brk.m == brk.m_prime) return false;
  return epc(key, brk.m, brk.r) == epc(key, brk.m_prime, brk.r_prime);
}

}  // namespace pshuf
