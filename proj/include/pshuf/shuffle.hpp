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
#include <utility>
#include <vector>

#include "pshuf/commit.hpp"
#include "pshuf/elgamal.hpp"
#include "pshuf/group.hpp"
#include "pshuf/matrix.hpp"

namespace pshuf {

/// Public input: commitment key, pk, matrix commitment c, inputs e and outputs e'.
struct ShuffleStatement {
  CommitmentKey key;
  Element pk;
  ElementVector c;
  std::vector<CiphertextVector> inputs;
  std::vector<CiphertextVector> outputs;

  const Group& group() const { return key.group(); }
  std::size_t size() const { return inputs.size(); }
  std::size_t width() const { return inputs.empty() ? 0 : inputs.front().size(); }

  /// Throws std::invalid_argument unless |c| = |e| = |e'| = N and all widths agree.
  void check_shape() const {
    const std::size_t n = key.size();
    if (c.size() != n || inputs.size() != n || outputs.size() != n) {
      throw std::invalid_argument("statement: vector lengths differ from commitment key size");
    }
    const std::size_t w = width();
    if (w == 0) throw std::invalid_argument("statement: ciphertext width must be positive");
    for (std::size_t i = 0; i < n; ++i) {
      if (inputs[i].size() != w || outputs[i].size() != w) {
        throw std::invalid_argument("statement: non-uniform ciphertext width");
      }
    }
  }

  friend bool operator==(const ShuffleStatement&, const ShuffleStatement&) = default;
};

/// Private input: permutation matrix M, commitment randomness r, re-encryption randomness R (w x N).
struct ShuffleWitness {
  Matrix M;
  ScalarVector r;
  Matrix R;

  friend bool operator==(const ShuffleWitness&, const ShuffleWitness&) = default;
};

struct ShuffleInstance {
  ShuffleStatement statement;
  ShuffleWitness witness;
};

/// Deterministic core of shuffle: e'_i = ReEnc(e_{p[i]}, R_{p[i]}), c = C(M, r).
inline ShuffleInstance shuffle_with(const CommitmentKey& key, const Element& pk, std::vector<CiphertextVector> inputs,
                                    const Permutation& perm, ScalarVector r, Matrix R) {
  const Group& G = key.group();
  const std::size_t n = inputs.size();
  if (n == 0) throw std::invalid_argument("shuffle: no inputs");
  if (perm.size() != n || r.size() != n || R.cols() != n || R.rows() != inputs.front().size()) {
    throw std::invalid_argument("shuffle: witness dimensions do not match inputs");
  }
  for (const auto& e : inputs)
    if (e.size() != R.rows()) throw std::invalid_argument("shuffle: non-uniform ciphertext width");

  Matrix M = perm_to_matrix(G, perm);
  std::vector<CiphertextVector> outputs;
  outputs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = perm[i];
    outputs.push_back(reenc_vec(G, pk, inputs[src], R.column(src)));
  }
  ElementVector c = commit_matrix(key, M, r);
  ShuffleStatement st{key, pk, std::move(c), std::move(inputs), std::move(outputs)};
  st.check_shape();
  return {std::move(st), ShuffleWitness{std::move(M), std::move(r), std::move(R)}};
}

/// Re-encrypts and permutes `inputs` under a uniform permutation.
template <std::uniform_random_bit_generator Rng>
ShuffleInstance shuffle(const CommitmentKey& key, const Element& pk, std::vector<CiphertextVector> inputs, Rng& rng) {
  const Group& G = key.group();
  const std::size_t n = inputs.size();
  if (n == 0) throw std::invalid_argument("shuffle: no inputs");
  const std::size_t w = inputs.front().size();
  Permutation perm = Permutation::random(rng, n);
  ScalarVector r = G.random_scalars(rng, n);
  Matrix R(w, n);
  for (std::size_t k = 0; k < w; ++k)
    for (std::size_t i = 0; i < n; ++i) R(k, i) = G.random_scalar(rng);
  return shuffle_with(key, pk, std::move(inputs), perm, std::move(r), std::move(R));
}

/// R_pi and R_shuf together: M is a permutation matrix, C(M, r) = c and
/// e'_i = ReEnc(e_{pi(i)}, R_{pi(i)}) for every i.
inline bool check_relation(const ShuffleStatement& st, const ShuffleWitness& wit) {
  const Group& G = st.group();
  const std::size_t n = st.size();
  const std::size_t w = st.width();
  try {
    st.check_shape();
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (wit.M.rows() != n || wit.M.cols() != n || wit.r.size() != n || wit.R.rows() != w || wit.R.cols() != n) {
    return false;
  }
  if (!is_permutation_matrix(wit.M)) return false;
  if (commit_matrix(st.key, wit.M, wit.r) != st.c) return false;
  const Permutation perm = matrix_to_perm(wit.M);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = perm[i];
    if (st.outputs[i] != reenc_vec(G, st.pk, st.inputs[src], wit.R.column(src))) return false;
  }
  return true;
}

}  // namespace pshuf
