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

// Four-message proof of a parallel re-encryption shuffle.
//
//   V -> P : u                      (vector challenge)
//   P -> V : c_hat, t1, t2, t3, t4, t_hat
//   V -> P : c                      (scalar challenge)
//   P -> V : s1, s2, s3, s4, s_hat, s'
//
// c_hat_0 = h_1 is fixed by the verifier and never transmitted.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pshuf/commit.hpp"
#include "pshuf/elgamal.hpp"
#include "pshuf/group.hpp"
#include "pshuf/matrix.hpp"
#include "pshuf/shuffle.hpp"

namespace pshuf {

namespace testing {
struct RewindingHook;
}

using VectorChallenge = ScalarVector;

struct ProverRandomness {
  ScalarVector r_hat;
  ScalarVector omega_hat;
  ScalarVector omega_prime;
  Scalar omega1;
  Scalar omega2;
  Scalar omega3;
  ScalarVector omega4;

  template <std::uniform_random_bit_generator Rng>
  static ProverRandomness random(const Group& G, std::size_t n, std::size_t w, Rng& rng) {
    ProverRandomness pr;
    pr.r_hat = G.random_scalars(rng, n);
    pr.omega_hat = G.random_scalars(rng, n);
    pr.omega_prime = G.random_scalars(rng, n);
    pr.omega1 = G.random_scalar(rng);
    pr.omega2 = G.random_scalar(rng);
    pr.omega3 = G.random_scalar(rng);
    pr.omega4 = G.random_scalars(rng, w);
    return pr;
  }

  static ProverRandomness zero(std::size_t n, std::size_t w) {
    ProverRandomness pr;
    pr.r_hat = pr.omega_hat = pr.omega_prime = ScalarVector(n);
    pr.omega4 = ScalarVector(w);
    return pr;
  }
};

struct ProverCommitMessage {
  ElementVector c_hat;  // c_hat_1 .. c_hat_N
  Element t1;
  Element t2;
  Element t3;
  CiphertextVector t4;
  ElementVector t_hat;

  friend bool operator==(const ProverCommitMessage&, const ProverCommitMessage&) = default;
};

struct Response {
  Scalar s1;
  Scalar s2;
  Scalar s3;
  ScalarVector s4;
  ScalarVector s_hat;
  ScalarVector s_prime;

  friend bool operator==(const Response&, const Response&) = default;
};

struct Transcript {
  VectorChallenge u;
  ProverCommitMessage msg2;
  Scalar c;
  Response resp;
};

/// Prover-side quantities fixed by the witness and u.
struct DerivedSecrets {
  ScalarVector u_prime;  // M u
  Scalar r_bar;          // sum r_i
  Scalar r_tilde;        // <r, u>
  Scalar r_diamond;      // r_hat_N + sum_{i<N} r_hat_i prod_{j>i} u'_j
  ScalarVector r_star;   // R u
};

/// Exponent of h in c_hat_N: r_hat_N + sum_{i<N} r_hat_i prod_{j>i} u'_j, by a suffix-product sweep.
inline Scalar chain_randomness(const Group& G, const ScalarVector& u_prime, const ScalarVector& r_hat) {
  if (u_prime.size() != r_hat.size() || u_prime.empty()) {
    throw std::invalid_argument("chain_randomness: length mismatch");
  }
  Scalar acc = G.zero();
  Scalar suffix = G.one();
  for (std::size_t i = u_prime.size(); i-- > 0;) {
    acc = G.add(acc, G.mul(r_hat[i], suffix));
    suffix = G.mul(suffix, u_prime[i]);
  }
  return acc;
}

inline DerivedSecrets derive_secrets(const Group& G, const ShuffleWitness& wit, const VectorChallenge& u,
                                     const ScalarVector& r_hat) {
  DerivedSecrets d;
  d.u_prime = mat_vec_mul(G, wit.M, u);
  d.r_bar = sum(G, wit.r);
  d.r_tilde = inner(G, wit.r, u);
  d.r_diamond = chain_randomness(G, d.u_prime, r_hat);
  d.r_star = mat_vec_mul(G, wit.R, u);
  return d;
}

/// c_hat_i = h^{r_hat_i} c_hat_{i-1}^{u'_i} with c_hat_0 = h_1; returns c_hat_1 .. c_hat_N.
inline ElementVector commitment_chain(const CommitmentKey& key, const ScalarVector& u_prime, const ScalarVector& r_hat) {
  if (u_prime.size() != r_hat.size()) throw std::invalid_argument("commitment_chain: length mismatch");
  ElementVector chain;
  chain.reserve(u_prime.size());
  Element prev = key.basis(0);
  for (std::size_t i = 0; i < u_prime.size(); ++i) {
    prev = pc(key, u_prime[i], r_hat[i], prev);
    chain.push_back(prev);
  }
  return chain;
}

namespace detail {

inline void check_transcript_shape(const ShuffleStatement& st, const VectorChallenge& u, const ProverCommitMessage& m,
                                   const Response& s) {
  st.check_shape();
  const std::size_t n = st.size();
  const std::size_t w = st.width();
  if (u.size() != n || m.c_hat.size() != n || m.t_hat.size() != n || m.t4.size() != w || s.s4.size() != w ||
      s.s_hat.size() != n || s.s_prime.size() != n) {
    throw std::invalid_argument("transcript shape does not match statement");
  }
}

/// Right-hand sides of the five verification equations.
struct EquationValues {
  Element t1;
  Element t2;
  Element t3;
  CiphertextVector t4;
  ElementVector t_hat;
};

inline EquationValues equation_values(const ShuffleStatement& st, const VectorChallenge& u, const ElementVector& c_hat,
                                      const Scalar& c, const Response& s) {
  const Group& G = st.group();
  const CommitmentKey& key = st.key;
  const std::size_t n = st.size();
  const Scalar minus_c = G.neg(c);

  EquationValues v;
  const Element c_prod = product(G, st.c);
  const Element h_prod = product(G, key.basis());
  v.t1 = G.mul(G.exp(G.div(c_prod, h_prod), minus_c), G.exp(key.h(), s.s1));

  const Element h1_u = G.exp(key.basis(0), product(G, u));
  v.t2 = G.mul(G.exp(G.div(c_hat.back(), h1_u), minus_c), G.exp(key.h(), s.s2));

  Element c_u = G.identity();
  for (std::size_t i = 0; i < n; ++i) c_u = G.mul(c_u, G.exp(st.c[i], u[i]));
  v.t3 = G.mul(G.exp(c_u, minus_c), epc(key, s.s_prime, s.s3));

  const std::size_t w = st.width();
  const CiphertextVector e_u = cmulti_exp(G, st.inputs, u, w);
  const CiphertextVector e_prime_s = cmulti_exp(G, st.outputs, s.s_prime, w);
  v.t4 = reenc_vec(G, st.pk, cmul(G, cexp(G, e_u, minus_c), e_prime_s), [&] {
    ScalarVector neg(w);
    for (std::size_t k = 0; k < w; ++k) neg[k] = G.neg(s.s4[k]);
    return neg;
  }());

  v.t_hat.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Element& prev = i == 0 ? key.basis(0) : c_hat[i - 1];
    v.t_hat.push_back(
        G.mul(G.mul(G.exp(c_hat[i], minus_c), G.exp(key.h(), s.s_hat[i])), G.exp(prev, s.s_prime[i])));
  }
  return v;
}

}  // namespace detail

/// Single-use prover state: one commit message, one response.
class ProverSession {
 public:
  /// Throws std::invalid_argument if the witness does not satisfy the relation.
  template <std::uniform_random_bit_generator Rng>
  static std::pair<ProverSession, ProverCommitMessage> commit(const ShuffleStatement& st, const ShuffleWitness& wit,
                                                              const VectorChallenge& u, Rng& rng) {
    return commit_with(st, wit, u, ProverRandomness::random(st.group(), st.size(), st.width(), rng));
  }

  /// As commit, with caller-chosen randomness.
  static std::pair<ProverSession, ProverCommitMessage> commit_with(const ShuffleStatement& st,
                                                                   const ShuffleWitness& wit, const VectorChallenge& u,
                                                                   ProverRandomness rnd) {
    const Group& G = st.group();
    const CommitmentKey& key = st.key;
    const std::size_t n = st.size();
    const std::size_t w = st.width();
    if (u.size() != n) throw std::invalid_argument("challenge length does not match statement");
    if (rnd.r_hat.size() != n || rnd.omega_hat.size() != n || rnd.omega_prime.size() != n ||
        rnd.omega4.size() != w) {
      throw std::invalid_argument("prover randomness has the wrong shape");
    }
    if (!check_relation(st, wit)) throw std::invalid_argument("witness does not satisfy the shuffle relation");

    DerivedSecrets sec = derive_secrets(G, wit, u, rnd.r_hat);
    ProverCommitMessage m;
    m.c_hat = commitment_chain(key, sec.u_prime, rnd.r_hat);
    m.t1 = G.exp(key.h(), rnd.omega1);
    m.t2 = G.exp(key.h(), rnd.omega2);
    m.t3 = epc(key, rnd.omega_prime, rnd.omega3);
    ScalarVector minus_omega4(w);
    for (std::size_t k = 0; k < w; ++k) minus_omega4[k] = G.neg(rnd.omega4[k]);
    m.t4 = reenc_vec(G, st.pk, cmulti_exp(G, st.outputs, rnd.omega_prime, w), minus_omega4);
    m.t_hat.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Element& prev = i == 0 ? key.basis(0) : m.c_hat[i - 1];
      m.t_hat.push_back(pc(key, rnd.omega_prime[i], rnd.omega_hat[i], prev));
    }
    return {ProverSession(G, std::move(sec), std::move(rnd)), std::move(m)};
  }

  /// Throws std::logic_error on a second call.
  Response respond(const Scalar& c) {
    if (used_) throw std::logic_error("prover session already answered a challenge");
    used_ = true;
    return response_for(c);
  }

 private:
  friend struct testing::RewindingHook;

  ProverSession(Group G, DerivedSecrets sec, ProverRandomness rnd)
      : group_(std::move(G)), secrets_(std::move(sec)), rnd_(std::move(rnd)) {}

  Response response_for(const Scalar& c) const {
    const Group& G = group_;
    auto affine = [&](const Scalar& omega, const Scalar& secret) { return G.add(omega, G.mul(c, secret)); };
    auto affine_vec = [&](const ScalarVector& omega, const ScalarVector& secret) {
      ScalarVector out(omega.size());
      for (std::size_t i = 0; i < omega.size(); ++i) out[i] = affine(omega[i], secret[i]);
      return out;
    };
    Response s;
    s.s1 = affine(rnd_.omega1, secrets_.r_bar);
    s.s2 = affine(rnd_.omega2, secrets_.r_diamond);
    s.s3 = affine(rnd_.omega3, secrets_.r_tilde);
    s.s4 = affine_vec(rnd_.omega4, secrets_.r_star);
    s.s_hat = affine_vec(rnd_.omega_hat, rnd_.r_hat);
    s.s_prime = affine_vec(rnd_.omega_prime, secrets_.u_prime);
    return s;
  }

  Group group_;
  DerivedSecrets secrets_;
  ProverRandomness rnd_;
  bool used_ = false;
};

struct VerifyResult {
  bool accepted = false;
  /// 1..4 for t1..t4, 5 for t_hat; 0 when accepted.
  int failed_equation = 0;
  std::string reason;

  explicit operator bool() const { return accepted; }
  static VerifyResult accept() { return {true, 0, {}}; }
  static VerifyResult reject(int eq, std::string why) { return {false, eq, std::move(why)}; }
};

/// Throws std::invalid_argument on shape mismatch.
inline VerifyResult verify(const ShuffleStatement& st, const Transcript& t) {
  detail::check_transcript_shape(st, t.u, t.msg2, t.resp);
  const auto v = detail::equation_values(st, t.u, t.msg2.c_hat, t.c, t.resp);
  if (!(t.msg2.t1 == v.t1)) return VerifyResult::reject(1, "t1 equation failed");
  if (!(t.msg2.t2 == v.t2)) return VerifyResult::reject(2, "t2 equation failed");
  if (!(t.msg2.t3 == v.t3)) return VerifyResult::reject(3, "t3 equation failed");
  if (t.msg2.t4 != v.t4) return VerifyResult::reject(4, "t4 equation failed");
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (!(t.msg2.t_hat[i] == v.t_hat[i])) {
      return VerifyResult::reject(5, "t_hat equation failed at index " + std::to_string(i + 1));
    }
  }
  return VerifyResult::accept();
}

/// Honest-verifier simulation: uniform c_hat and responses, commitments solved from the equations.
template <std::uniform_random_bit_generator Rng>
Transcript simulate(const ShuffleStatement& st, const VectorChallenge& u, const Scalar& c, Rng& rng) {
  st.check_shape();
  const Group& G = st.group();
  const std::size_t n = st.size();
  const std::size_t w = st.width();
  if (u.size() != n) throw std::invalid_argument("challenge length does not match statement");

  Transcript t;
  t.u = u;
  t.c = c;
  t.msg2.c_hat.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.msg2.c_hat.push_back(G.random_element(rng));
  t.resp.s_hat = G.random_scalars(rng, n);
  t.resp.s_prime = G.random_scalars(rng, n);
  t.resp.s4 = G.random_scalars(rng, w);
  t.resp.s1 = G.random_scalar(rng);
  t.resp.s2 = G.random_scalar(rng);
  t.resp.s3 = G.random_scalar(rng);

  auto v = detail::equation_values(st, u, t.msg2.c_hat, c, t.resp);
  t.msg2.t1 = std::move(v.t1);
  t.msg2.t2 = std::move(v.t2);
  t.msg2.t3 = std::move(v.t3);
  t.msg2.t4 = std::move(v.t4);
  t.msg2.t_hat = std::move(v.t_hat);
  return t;
}

}  // namespace pshuf
