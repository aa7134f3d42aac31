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

#include "pshuf/random.hpp"
#include "pshuf/shuffle.hpp"
#include "support/fixtures.hpp"

namespace pshuf {
namespace {

TEST(Shuffle, HonestInstanceSatisfiesRelation) {
  const Group& G = Group::preset(Preset::test160);
  Drbg rng(std::uint64_t{41});
  for (std::size_t n : {1u, 2u, 5u})
    for (std::size_t w : {1u, 3u}) {
      auto inst = test::make_instance(G, n, w, rng);
      EXPECT_TRUE(check_relation(inst.statement, inst.witness));
      EXPECT_EQ(test::plaintext_multiset(G, inst.keys.sk, inst.statement.inputs),
                test::plaintext_multiset(G, inst.keys.sk, inst.statement.outputs));
    }
}

TEST(Shuffle, OutputSlotsFollowPermutation) {
  const Group& G = Group::preset(Preset::test160);
  Drbg rng(std::uint64_t{42});
  auto inst = test::make_instance(G, 6, 2, rng);
  const Permutation p = matrix_to_perm(inst.witness.M);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(dec(G, inst.keys.sk, inst.statement.outputs[i][k]), inst.plaintexts[p[i]][k]);
    }
}

TEST(Shuffle, DeterministicCore) {
  const Group& G = Group::preset(Preset::toy);
  const KeyPair kp = keypair_from_secret(G, G.scalar(2));
  const auto key = gen_commit_key(G, 2, "toy-shuffle");
  std::vector<CiphertextVector> in{{enc(G, kp.pk, G.element(8), G.scalar(3))},
                                   {enc(G, kp.pk, G.element(9), G.scalar(1))}};
  Matrix R(1, 2);
  R(0, 0) = G.scalar(5);
  R(0, 1) = G.scalar(4);
  const auto inst = shuffle_with(key, kp.pk, in, Permutation({1, 0}), {G.scalar(1), G.scalar(2)}, R);
  EXPECT_EQ(inst.statement.outputs[0][0], reenc(G, kp.pk, in[1][0], G.scalar(4)));
  EXPECT_EQ(inst.statement.outputs[1][0], reenc(G, kp.pk, in[0][0], G.scalar(5)));
  EXPECT_TRUE(check_relation(inst.statement, inst.witness));
}

TEST(Shuffle, RelationRejectsTamperedWitness) {
  const Group& G = Group::preset(Preset::test160);
  Drbg rng(std::uint64_t{43});
  auto inst = test::make_instance(G, 4, 2, rng);
  auto wit = inst.witness;
  wit.r[0] = G.add(wit.r[0], G.one());
  EXPECT_FALSE(check_relation(inst.statement, wit));
  wit = inst.witness;
  wit.R(1, 2) = G.add(wit.R(1, 2), G.one());
  EXPECT_FALSE(check_relation(inst.statement, wit));
  wit = inst.witness;
  wit.M = test::uniform_average_matrix(G, 4);
  EXPECT_FALSE(check_relation(inst.statement, wit));
  auto st = inst.statement;
  std::swap(st.outputs[0], st.outputs[1]);
  EXPECT_FALSE(check_relation(st, inst.witness));
}

TEST(Shuffle, ShapeChecks) {
  const Group& G = Group::preset(Preset::test160);
  Drbg rng(std::uint64_t{44});
  auto inst = test::make_instance(G, 3, 2, rng);
  EXPECT_NO_THROW(inst.statement.check_shape());
  auto st = inst.statement;
  st.outputs[1].pop_back();
  EXPECT_THROW(st.check_shape(), std::invalid_argument);
  st = inst.statement;
  st.c.pop_back();
  EXPECT_THROW(st.check_shape(), std::invalid_argument);
}

}  // namespace
}  // namespace pshuf
