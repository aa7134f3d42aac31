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

#include <gtest/gtest.h>

#include "pshuf/extractor.hpp"
#include "pshuf/random.hpp"
#include "pshuf/testing/rewind.hpp"
#include "support/fixtures.hpp"

namespace pshuf {
namespace {

const Group& g160() { return Group::preset(Preset::test160); }
const Group& toy() { return Group::preset(Preset::toy); }

TEST(Extractor, BasicWitnessSatisfiesSubstatements) {
  Drbg rng(std::uint64_t{81});
  const auto inst = test::make_instance(g160(), 3, 2, rng);
  const auto u = g160().random_scalars(rng, 3);
  auto bw = testing::rewind_basic_witness(inst.statement, inst.witness, u, rng);
  EXPECT_TRUE(check_substatements(inst.statement, bw));
  bw.r_tilde = g160().add(bw.r_tilde, g160().one());
  EXPECT_FALSE(check_substatements(inst.statement, bw));
}

TEST(Extractor, BasicExtractRejectsBadPairs) {
  Drbg rng(std::uint64_t{82});
  const auto inst = test::make_instance(g160(), 2, 1, rng);
  const auto u = g160().random_scalars(rng, 2);
  auto [t1, t2] = testing::rewound_transcripts(inst.statement, inst.witness, u, rng);
  EXPECT_THROW(basic_extract(inst.statement, t1, t1), ExtractionError);
  auto bad = t2;
  bad.resp.s1 = g160().add(bad.resp.s1, g160().one());
  EXPECT_THROW(basic_extract(inst.statement, t1, bad), ExtractionError);
  bad = t2;
  bad.u[0] = g160().add(bad.u[0], g160().one());
  EXPECT_THROW(basic_extract(inst.statement, t1, bad), ExtractionError);
  EXPECT_NO_THROW(basic_extract(inst.statement, t1, t2));
}

TEST(Extractor, RecoversHonestWitness) {
  Drbg rng(std::uint64_t{83});
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto inst = test::make_instance(g160(), n, 2, rng);
    const auto run = testing::extract_from_honest_prover(inst.statement, inst.witness, rng);
    ASSERT_TRUE(std::holds_alternative<ExtendedWitness>(run.outcome)) << n;
    const auto& got = std::get<ExtendedWitness>(run.outcome);
    EXPECT_EQ(got.M, inst.witness.M);
    EXPECT_EQ(got.r, inst.witness.r);
    EXPECT_EQ(got.R, inst.witness.R);
    EXPECT_EQ(run.singular_retries, 0u);
  }
}

TEST(Extractor, TooFewOrDependentWitnesses) {
  Drbg rng(std::uint64_t{84});
  const auto inst = test::make_instance(g160(), 3, 1, rng);
  auto ws = testing::rewind_basic_witnesses(inst.statement, inst.witness, 2, rng);
  EXPECT_THROW(extended_extract(inst.statement, ws), ExtractionError);
  ws.push_back(ws[0]);
  EXPECT_THROW(extended_extract(inst.statement, ws), SingularMatrixError);
}

TEST(Extractor, SingularRetriesAtToy) {
  Drbg rng(std::uint64_t{85});
  const auto inst = test::make_instance(toy(), 3, 1, rng);
  const int runs = 300;
  std::size_t retries = 0;
  for (int t = 0; t < runs; ++t) {
    const auto run = testing::extract_from_honest_prover(inst.statement, inst.witness, rng);
    ASSERT_TRUE(std::holds_alternative<ExtendedWitness>(run.outcome));
    EXPECT_EQ(std::get<ExtendedWitness>(run.outcome), inst.witness);
    retries += run.singular_retries;
  }
  // Each attempt is singular with probability 1 - (1 - 1/11)(1 - 1/121)(1 - 1/1331).
  const double p = 1 - (1 - 1 / 11.0) * (1 - 1 / 121.0) * (1 - 1 / 1331.0);
  const double attempts = static_cast<double>(runs + retries);
  EXPECT_NEAR(retries / attempts, p, 5 * std::sqrt(p * (1 - p) / attempts));
}

template <typename Rng>
std::vector<BasicWitness> answer_all(const test::TrapdoorAdversary& adv, std::size_t count, Rng& rng) {
  std::vector<BasicWitness> ws;
  for (std::size_t j = 0; j < count; ++j) {
    ws.push_back(adv.answer(g160().random_scalars(rng, adv.statement().size()), rng));
    EXPECT_TRUE(check_substatements(adv.statement(), ws.back()));
  }
  return ws;
}

TEST(Extractor, AveragingMatrixYieldsChainBreak) {
  Drbg rng(std::uint64_t{86});
  for (std::size_t n = 2; n <= 4; ++n) {
    test::TrapdoorAdversary adv(g160(), test::uniform_average_matrix(g160(), n), 2, rng);
    const auto ws = answer_all(adv, n, rng);
    const auto out = extended_extract(adv.statement(), ws);
    ASSERT_TRUE(std::holds_alternative<CommitmentBreakFinding>(out));
    const auto& f = std::get<CommitmentBreakFinding>(out);
    EXPECT_EQ(f.source, BreakSource::permutation_chain);
    EXPECT_TRUE(verify_commitment_break(adv.statement().key, f.brk));
  }
}

TEST(Extractor, BadRowSumsYieldRowSumBreak) {
  Drbg rng(std::uint64_t{87});
  const std::size_t n = 3;
  Matrix M(n, n);
  for (std::size_t j = 0; j < n; ++j) M(0, j) = g160().one();
  test::TrapdoorAdversary adv(g160(), M, 1, rng);
  const auto ws = answer_all(adv, n, rng);
  const auto out = extended_extract(adv.statement(), ws);
  ASSERT_TRUE(std::holds_alternative<CommitmentBreakFinding>(out));
  const auto& f = std::get<CommitmentBreakFinding>(out);
  EXPECT_EQ(f.source, BreakSource::row_sums);
  EXPECT_TRUE(verify_commitment_break(adv.statement().key, f.brk));
}

TEST(Extractor, InconsistentExtraChallengeYieldsMismatchBreak) {
  Drbg rng(std::uint64_t{88});
  const std::size_t n = 3;
  test::TrapdoorAdversary adv(g160(), perm_to_matrix(g160(), Permutation::random(rng, n)), 2, rng);
  auto ws = answer_all(adv, n, rng);
  ScalarVector delta{g160().one(), g160().neg(g160().one()), g160().zero()};
  ws.push_back(adv.answer(g160().random_scalars(rng, n), rng, &delta));
  ASSERT_TRUE(check_substatements(adv.statement(), ws.back()));
  const auto out = extended_extract(adv.statement(), ws);
  ASSERT_TRUE(std::holds_alternative<CommitmentBreakFinding>(out));
  const auto& f = std::get<CommitmentBreakFinding>(out);
  EXPECT_EQ(f.source, BreakSource::challenge_mismatch);
  EXPECT_EQ(f.witness_index, n);
  EXPECT_TRUE(verify_commitment_break(adv.statement().key, f.brk));
}

// At toy size, pick N independent challenges on which the averaging matrix
// passes the product check, so only extra challenges can expose it.
class AveragingAtToy : public ::testing::Test {
 protected:
  static constexpr std::size_t n = 3;

  void SetUp() override {
    const Group& G = toy();
    const Matrix M = test::uniform_average_matrix(G, n);
    for (long a = 0; a < 11 && blind.size() < n; ++a)
      for (long b = 0; b < 11 && blind.size() < n; ++b)
        for (long c = 0; c < 11 && blind.size() < n; ++c) {
          ScalarVector x{G.reduce(a), G.reduce(b), G.reduce(c)};
          if (!perm_product_check(G, M.transpose(), x).is_zero()) {
            if (revealing.empty()) revealing = x;
            continue;
          }
          auto trial = blind;
          trial.push_back(x);
          if (independent(trial)) blind = std::move(trial);
        }
    ASSERT_EQ(blind.size(), n);
    ASSERT_FALSE(revealing.empty());
  }

  // Gaussian elimination over Z_11.
  static bool independent(const std::vector<ScalarVector>& vs) {
    std::vector<std::vector<long>> rows;
    for (const auto& v : vs) {
      std::vector<long> r;
      for (const auto& x : v) r.push_back(static_cast<long>(x.value().get_si()));
      rows.push_back(r);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][col] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      const long inv = static_cast<long>(test::toy_inv(rows[rank][col], 11));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][col] == 0) continue;
        const long f = rows[i][col] * inv % 11;
        for (std::size_t k = 0; k < n; ++k) rows[i][k] = ((rows[i][k] - f * rows[rank][k]) % 11 + 11) % 11;
      }
      ++rank;
    }
    return rank == rows.size();
  }

  std::vector<ScalarVector> blind;
  ScalarVector revealing;
};

TEST_F(AveragingAtToy, NoRevealingChallengeNeedsMoreWitnesses) {
  Drbg rng(std::uint64_t{89});
  test::TrapdoorAdversary adv(toy(), test::uniform_average_matrix(toy(), n), 1, rng);
  std::vector<BasicWitness> ws;
  for (const auto& u : blind) ws.push_back(adv.answer(u, rng));
  EXPECT_THROW(extended_extract(adv.statement(), ws), NeedMoreWitnesses);
}

TEST_F(AveragingAtToy, ConsistentExtraChallengeYieldsChainBreak) {
  Drbg rng(std::uint64_t{90});
  test::TrapdoorAdversary adv(toy(), test::uniform_average_matrix(toy(), n), 1, rng);
  std::vector<BasicWitness> ws;
  for (const auto& u : blind) ws.push_back(adv.answer(u, rng));
  ws.push_back(adv.answer(revealing, rng));
  const auto out = extended_extract(adv.statement(), ws);
  ASSERT_TRUE(std::holds_alternative<CommitmentBreakFinding>(out));
  const auto& f = std::get<CommitmentBreakFinding>(out);
  EXPECT_EQ(f.source, BreakSource::permutation_chain);
  EXPECT_EQ(f.witness_index, n);
  EXPECT_TRUE(verify_commitment_break(adv.statement().key, f.brk));
}

TEST_F(AveragingAtToy, InconsistentExtraChallengeYieldsOpeningBreak) {
  Drbg rng(std::uint64_t{91});
  const Group& G = toy();
  test::TrapdoorAdversary adv(G, test::uniform_average_matrix(G, n), 1, rng);
  std::vector<BasicWitness> ws;
  for (const auto& u : blind) ws.push_back(adv.answer(u, rng));
  ScalarVector delta{G.one(), G.zero(), G.neg(G.one())};
  ws.push_back(adv.answer(revealing, rng, &delta));
  ASSERT_TRUE(check_substatements(adv.statement(), ws.back()));
  const auto out = extended_extract(adv.statement(), ws);
  ASSERT_TRUE(std::holds_alternative<CommitmentBreakFinding>(out));
  const auto& f = std::get<CommitmentBreakFinding>(out);
  EXPECT_EQ(f.source, BreakSource::permutation_opening);
  EXPECT_TRUE(verify_commitment_break(adv.statement().key, f.brk));
}

TEST(Extractor, BreakSourceNames) {
  EXPECT_EQ(to_string(BreakSource::row_sums), "row-sums");
  EXPECT_EQ(to_string(BreakSource::permutation_chain), "permutation-chain");
}

}  // namespace
}  // namespace pshuf
