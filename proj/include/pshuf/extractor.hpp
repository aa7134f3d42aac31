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

// Executable soundness: the basic extractor turns two accepting transcripts
// that share (u, msg2) into openings of five sub-statements; the extended
// extractor combines N such openings with linearly independent u into either
// a witness for the shuffle relation or a commitment break.

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pshuf/commit.hpp"
#include "pshuf/elgamal.hpp"
#include "pshuf/group.hpp"
#include "pshuf/matrix.hpp"
#include "pshuf/shuffle.hpp"
#include "pshuf/sigma.hpp"

namespace pshuf {

/// Openings extracted from one pair of transcripts. c_hat is the shared prefix
/// the chain sub-statements refer to.
struct BasicWitness {
  VectorChallenge u;
  ElementVector c_hat;
  Scalar r_bar;
  Scalar r_diamond;
  Scalar r_tilde;
  ScalarVector r_star;
  ScalarVector r_hat;
  ScalarVector u_prime;
};

using ExtendedWitness = ShuffleWitness;

/// Which argument produced a break.
enum class BreakSource {
  row_sums,               // M 1 != 1: prod c_i opened to 1 and to M 1
  permutation_opening,    // M 1 = 1, M U_j != U'_j: prod c_i^{U_j} opened twice
  permutation_chain,      // M 1 = 1, prod U'_j != prod U_j: c_hat_N opened twice over (h, h_1)
  challenge_mismatch,     // M permutation, U'_l != M U_l
};

inline std::string_view to_string(BreakSource s) {
  switch (s) {
    case BreakSource::row_sums: return "row-sums";
    case BreakSource::permutation_opening: return "permutation-opening";
    case BreakSource::permutation_chain: return "permutation-chain";
    case BreakSource::challenge_mismatch: return "challenge-mismatch";
  }
  return "unknown";
}

struct CommitmentBreakFinding {
  CommitmentBreak brk;
  BreakSource source;
  std::size_t witness_index;  // basic witness the break was derived from
};

using ExtractionOutcome = std::variant<ExtendedWitness, CommitmentBreakFinding>;

/// Inputs the extractor cannot use: non-accepting or mismatched transcripts,
/// sub-statement failures, too few witnesses.
class ExtractionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// M 1 = 1 but no supplied challenge exposes the permutation polynomial; supply an extra witness.
class NeedMoreWitnesses : public std::runtime_error {
 public:
  NeedMoreWitnesses() : std::runtime_error("no supplied challenge separates M from a permutation matrix") {}
};

inline BasicWitness basic_extract(const ShuffleStatement& st, const Transcript& t, const Transcript& t_star) {
  const Group& G = st.group();
  if (t.u != t_star.u) throw ExtractionError("transcripts use different vector challenges");
  if (t.msg2 != t_star.msg2) throw ExtractionError("transcripts use different commit messages");
  if (t.c == t_star.c) throw ExtractionError("transcripts use the same challenge");
  if (!verify(st, t) || !verify(st, t_star)) throw ExtractionError("transcript does not verify");

  const Scalar d = G.inv(G.sub(t.c, t_star.c));
  auto quot = [&](const Scalar& a, const Scalar& b) { return G.mul(G.sub(a, b), d); };
  auto quot_vec = [&](const ScalarVector& a, const ScalarVector& b) {
    ScalarVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = quot(a[i], b[i]);
    return out;
  };

  BasicWitness bw;
  bw.u = t.u;
  bw.c_hat = t.msg2.c_hat;
  bw.r_bar = quot(t.resp.s1, t_star.resp.s1);
  bw.r_diamond = quot(t.resp.s2, t_star.resp.s2);
  bw.r_tilde = quot(t.resp.s3, t_star.resp.s3);
  bw.r_star = quot_vec(t.resp.s4, t_star.resp.s4);
  bw.r_hat = quot_vec(t.resp.s_hat, t_star.resp.s_hat);
  bw.u_prime = quot_vec(t.resp.s_prime, t_star.resp.s_prime);
  return bw;
}

/// The five sub-statements:
///   (1) prod c_j = EPC(1, r_bar)
///   (2) prod c_j^{u_j} = EPC(u', r_tilde)
///   (3) prod e'_i^{u'_i} = Enc(1, r_star) prod e_i^{u_i}
///   (4) c_hat_i = PC_{h, c_hat_{i-1}}(u'_i, r_hat_i)
///   (5) c_hat_N = PC_{h, h_1}(prod u_i, r_diamond)
inline bool check_substatements(const ShuffleStatement& st, const BasicWitness& bw) {
  const Group& G = st.group();
  const CommitmentKey& key = st.key;
  const std::size_t n = st.size();
  const std::size_t w = st.width();
  if (bw.u.size() != n || bw.c_hat.size() != n || bw.r_hat.size() != n || bw.u_prime.size() != n ||
      bw.r_star.size() != w) {
    return false;
  }

  if (!(product(G, st.c) == epc(key, ScalarVector(n, G.one()), bw.r_bar))) return false;

  Element c_u = G.identity();
  for (std::size_t j = 0; j < n; ++j) c_u = G.mul(c_u, G.exp(st.c[j], bw.u[j]));
  if (!(c_u == epc(key, bw.u_prime, bw.r_tilde))) return false;

  const auto lhs = cmulti_exp(G, st.outputs, bw.u_prime, w);
  const auto rhs = cmul(G, enc_one(G, st.pk, bw.r_star), cmulti_exp(G, st.inputs, bw.u, w));
  if (lhs != rhs) return false;

  for (std::size_t i = 0; i < n; ++i) {
    const Element& prev = i == 0 ? key.basis(0) : bw.c_hat[i - 1];
    if (!(bw.c_hat[i] == pc(key, bw.u_prime[i], bw.r_hat[i], prev))) return false;
  }

  return bw.c_hat.back() == pc(key, product(G, bw.u), bw.r_diamond);
}

namespace detail {

inline ScalarVector unit_scaled(const Group& G, std::size_t n, const Scalar& v) {
  ScalarVector out(n, G.zero());
  out[0] = v;
  return out;
}

inline CommitmentBreakFinding checked_break(const CommitmentKey& key, CommitmentBreak brk, BreakSource source,
                                            std::size_t index) {
  if (!verify_commitment_break(key, brk)) {
    throw std::logic_error("extracted commitment break does not verify");
  }
  return {std::move(brk), source, index};
}

}  // namespace detail

/// Uses the first N witnesses to form U (challenges as columns); any further
/// witnesses serve as extra challenges for the consistency and permutation
/// checks. Throws SingularMatrixError when those N challenges are dependent.
inline ExtractionOutcome extended_extract(const ShuffleStatement& st, std::span<const BasicWitness> ws) {
  st.check_shape();
  const Group& G = st.group();
  const CommitmentKey& key = st.key;
  const std::size_t n = st.size();
  if (ws.size() < n) throw ExtractionError("extended extraction needs at least N basic witnesses");
  for (std::size_t j = 0; j < ws.size(); ++j) {
    if (!check_substatements(st, ws[j])) {
      throw ExtractionError("basic witness " + std::to_string(j) + " fails its sub-statements");
    }
  }

  std::vector<ScalarVector> u_cols, u_prime_cols, r_star_cols;
  ScalarVector r_tilde;
  for (std::size_t j = 0; j < n; ++j) {
    u_cols.push_back(ws[j].u);
    u_prime_cols.push_back(ws[j].u_prime);
    r_star_cols.push_back(ws[j].r_star);
    r_tilde.push_back(ws[j].r_tilde);
  }
  const Matrix U = Matrix::from_columns(u_cols);
  const Matrix A = mat_inverse(G, U);
  const Matrix M = mat_mul(G, Matrix::from_columns(u_prime_cols), A);
  // c_l = EPC(M_l, <r_tilde, A_l>)
  const ScalarVector r = vec_mat_mul(G, r_tilde, A);

  // Second opening of prod_i c_i^{x_i}: EPC(M x, <r, x>).
  auto reopen = [&](const ScalarVector& x) { return std::pair{mat_vec_mul(G, M, x), inner(G, r, x)}; };

  if (is_permutation_matrix(M)) {
    for (std::size_t l = 0; l < ws.size(); ++l) {
      auto [u2, rho] = reopen(ws[l].u);
      if (u2 != ws[l].u_prime) {
        return detail::checked_break(key, {ws[l].u_prime, ws[l].r_tilde, std::move(u2), std::move(rho)},
                                     BreakSource::challenge_mismatch, l);
      }
    }
    ExtendedWitness out{M, r, mat_mul(G, Matrix::from_columns(r_star_cols), A)};
    if (!check_relation(st, out)) throw std::logic_error("extracted witness does not satisfy the relation");
    return out;
  }

  const ScalarVector ones(n, G.one());
  if (auto [row_sums, rho] = reopen(ones); row_sums != ones) {
    return detail::checked_break(key, {ones, ws[0].r_bar, std::move(row_sums), std::move(rho)},
                                 BreakSource::row_sums, 0);
  }

  // prod_i (M x)_i - prod_i x_i is a nonzero polynomial here; look for a
  // challenge where it does not vanish.
  const Matrix Mt = M.transpose();
  for (std::size_t j = 0; j < ws.size(); ++j) {
    if (perm_product_check(G, Mt, ws[j].u).is_zero()) continue;
    auto [u2, rho] = reopen(ws[j].u);
    if (u2 != ws[j].u_prime) {
      return detail::checked_break(key, {ws[j].u_prime, ws[j].r_tilde, std::move(u2), std::move(rho)},
                                   BreakSource::permutation_opening, j);
    }
    // U'_j = M U_j, so prod U'_j != prod U_j and the chain opens c_hat_N twice.
    const Scalar rho_chain = chain_randomness(G, ws[j].u_prime, ws[j].r_hat);
    return detail::checked_break(key,
                                 {detail::unit_scaled(G, n, product(G, ws[j].u_prime)), rho_chain,
                                  detail::unit_scaled(G, n, product(G, ws[j].u)), ws[j].r_diamond},
                                 BreakSource::permutation_chain, j);
  }
  throw NeedMoreWitnesses();
}

}  // namespace pshuf
