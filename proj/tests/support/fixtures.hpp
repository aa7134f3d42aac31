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

// Shared fixtures and independent oracles for the test suites.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "pshuf/pshuf.hpp"

namespace pshuf::test {

// --- toy-scale oracles (plain 64-bit arithmetic, no GMP) --------------------

inline std::uint64_t toy_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  for (std::uint64_t i = 0; i < e; ++i) acc = acc * (base % p) % p;
  return acc;
}

inline std::uint64_t toy_inv(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

/// Independent primality oracle (Boost.Multiprecision, not GMP).
inline bool probably_prime(const mpz_class& v) {
  boost::multiprecision::cpp_int n(v.get_str());
  return boost::multiprecision::miller_rabin_test(n, 40);
}

/// Upper-tail p-value of Pearson's chi-square statistic against a uniform distribution.
inline double chi_square_uniform_pvalue(const std::vector<std::size_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// --- honest instances -------------------------------------------------------

struct Instance {
  Group group;
  KeyPair keys;
  std::vector<ElementVector> plaintexts;
  ShuffleStatement statement;
  ShuffleWitness witness;
};

template <std::uniform_random_bit_generator Rng>
std::vector<CiphertextVector> encrypt_random(const Group& G, const Element& pk, std::size_t n, std::size_t w,
                                             Rng& rng, std::vector<ElementVector>* plaintexts = nullptr) {
  std::vector<CiphertextVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    ElementVector m;
    for (std::size_t k = 0; k < w; ++k) m.push_back(G.random_element(rng));
    out.push_back(enc_vec(G, pk, m, G.random_scalars(rng, w)));
    if (plaintexts != nullptr) plaintexts->push_back(std::move(m));
  }
  return out;
}

template <std::uniform_random_bit_generator Rng>
Instance make_instance(const Group& G, std::size_t n, std::size_t w, Rng& rng) {
  KeyPair kp = keygen(G, rng);
  std::vector<ElementVector> pts;
  auto inputs = encrypt_random(G, kp.pk, n, w, rng, &pts);
  std::uint8_t seed[8];
  fill_bytes(rng, seed);
  auto key = gen_commit_key(G, n, std::span<const std::uint8_t>(seed));
  auto inst = shuffle(key, kp.pk, std::move(inputs), rng);
  return {G, kp, std::move(pts), std::move(inst.statement), std::move(inst.witness)};
}

inline std::multiset<mpz_class> plaintext_multiset(const Group& G, const Scalar& sk,
                                                   const std::vector<CiphertextVector>& vs) {
  std::multiset<mpz_class> out;
  for (const auto& v : vs)
    for (const auto& e : v) out.insert(dec(G, sk, e).value());
  return out;
}

// --- trapdoor adversary -----------------------------------------------------

/// Commits to an arbitrary matrix M whose columns sum to 1, using a key with
/// known discrete logs (h_i = h^{x_i}), and answers each challenge with
/// sub-statement openings that all verify. Inputs and outputs encrypt the same
/// plaintext vector with known randomness, so the ciphertext sub-statement
/// holds whenever sum(u') = sum(u).
class TrapdoorAdversary {
 public:
  template <std::uniform_random_bit_generator Rng>
  TrapdoorAdversary(const Group& G, Matrix M, std::size_t w, Rng& rng)
      : G_(G), M_(std::move(M)), key_(make_key(G, M_.rows(), rng)), statement_(make_statement(w, rng)) {}

  const ShuffleStatement& statement() const { return statement_; }
  const Matrix& matrix() const { return M_; }

  /// Openings for challenge u with u' = M u + delta; delta must sum to zero.
  template <std::uniform_random_bit_generator Rng>
  BasicWitness answer(const VectorChallenge& u, Rng& rng, const ScalarVector* delta = nullptr) const {
    const std::size_t n = M_.rows();
    BasicWitness bw;
    bw.u = u;
    const ScalarVector mu = mat_vec_mul(G_, M_, u);
    bw.u_prime = mu;
    if (delta != nullptr)
      for (std::size_t i = 0; i < n; ++i) bw.u_prime[i] = G_.add(mu[i], (*delta)[i]);

    // (1): prod c = h^{sum r} prod h_i^{(M1)_i}; open to the ones vector through the trapdoor.
    const ScalarVector row_sums = mat_vec_mul(G_, M_, ScalarVector(n, G_.one()));
    Scalar r_bar = sum(G_, r_);
    for (std::size_t i = 0; i < n; ++i) r_bar = G_.add(r_bar, G_.mul(x_[i], G_.sub(row_sums[i], G_.one())));
    bw.r_bar = r_bar;

    // (2): prod c^u = EPC(M u, <r, u>); shift to u'.
    Scalar r_tilde = inner(G_, r_, u);
    for (std::size_t i = 0; i < n; ++i) r_tilde = G_.add(r_tilde, G_.mul(x_[i], G_.sub(mu[i], bw.u_prime[i])));
    bw.r_tilde = r_tilde;

    // (3)
    for (std::size_t k = 0; k < w_; ++k) {
      bw.r_star.push_back(G_.sub(inner(G_, b_[k], bw.u_prime), inner(G_, a_[k], u)));
    }

    // (4) honestly, (5) through log_h h_1.
    bw.r_hat = G_.random_scalars(rng, n);
    bw.c_hat = commitment_chain(key_, bw.u_prime, bw.r_hat);
    const Scalar rho = chain_randomness(G_, bw.u_prime, bw.r_hat);
    bw.r_diamond = G_.add(rho, G_.mul(x_[0], G_.sub(product(G_, bw.u_prime), product(G_, u))));
    return bw;
  }

 private:
  template <std::uniform_random_bit_generator Rng>
  CommitmentKey make_key(const Group& G, std::size_t n, Rng& rng) {
    for (;;) {
      const Element h = G.random_element(rng);
      x_ = G.random_scalars(rng, n);
      ElementVector basis;
      for (const auto& x : x_) basis.push_back(G.exp(h, x));
      try {
        return CommitmentKey(G, h, std::move(basis));
      } catch (const std::invalid_argument&) {
        // collision at toy sizes; resample
      }
    }
  }

  template <std::uniform_random_bit_generator Rng>
  ShuffleStatement make_statement(std::size_t w, Rng& rng) {
    const std::size_t n = M_.rows();
    w_ = w;
    KeyPair kp = keygen(G_, rng);
    ElementVector m;
    for (std::size_t k = 0; k < w; ++k) m.push_back(G_.random_element(rng));
    a_.assign(w, {});
    b_.assign(w, {});
    for (std::size_t k = 0; k < w; ++k) {
      a_[k] = G_.random_scalars(rng, n);
      b_[k] = G_.random_scalars(rng, n);
    }
    std::vector<CiphertextVector> inputs(n), outputs(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < w; ++k) {
        inputs[i].push_back(enc(G_, kp.pk, m[k], a_[k][i]));
        outputs[i].push_back(enc(G_, kp.pk, m[k], b_[k][i]));
      }
    r_ = G_.random_scalars(rng, n);
    return {key_, kp.pk, commit_matrix(key_, M_, r_), std::move(inputs), std::move(outputs)};
  }

  Group G_;
  Matrix M_;
  ScalarVector x_;
  ScalarVector r_;
  std::size_t w_ = 0;
  std::vector<ScalarVector> a_, b_;
  CommitmentKey key_;
  ShuffleStatement statement_;
};

/// Doubly stochastic matrix with every entry 1/N.
inline Matrix uniform_average_matrix(const Group& G, std::size_t n) {
  Matrix M(n, n);
  const Scalar inv_n = G.inv(G.reduce(static_cast<long>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = inv_n;
  return M;
}

}  // namespace pshuf::test
