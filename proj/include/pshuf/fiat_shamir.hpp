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
#include <string>
#include <string_view>

#include "pshuf/codec.hpp"
#include "pshuf/group.hpp"
#include "pshuf/hash.hpp"
#include "pshuf/shuffle.hpp"
#include "pshuf/sigma.hpp"

namespace pshuf {

/// Non-interactive proof; u and c are recomputed from the statement and msg2.
struct NIProof {
  ProverCommitMessage msg2;
  Response resp;

  friend bool operator==(const NIProof&, const NIProof&) = default;
};

struct NIChallenges {
  VectorChallenge u;
  Scalar c;

  friend bool operator==(const NIChallenges&, const NIChallenges&) = default;
};

inline constexpr std::string_view kTagU = "PSHUF/u";
inline constexpr std::string_view kTagC = "PSHUF/c";

/// Compact canonical encoding of the statement envelope.
inline std::string statement_bytes(const ShuffleStatement& st) {
  return codec::canonical(codec::envelope("statement", codec::encode(st)));
}

inline std::string msg2_bytes(const ProverCommitMessage& m) { return codec::canonical(codec::encode(m)); }

/// u_i = SHA-256("PSHUF/u" | statement | BE32(i)) mod q for i = 1..N.
inline VectorChallenge derive_u(const Group& G, std::string_view statement, std::size_t n) {
  VectorChallenge u;
  u.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Sha256 h;
    h.update(kTagU).update(statement).update_u32(static_cast<std::uint32_t>(i));
    u.push_back(G.reduce(from_big_endian(h.finish())));
  }
  return u;
}

/// c = SHA-256("PSHUF/c" | statement | msg2) mod q.
inline Scalar derive_c(const Group& G, std::string_view statement, std::string_view msg2) {
  Sha256 h;
  h.update(kTagC).update(statement).update(msg2);
  return G.reduce(from_big_endian(h.finish()));
}

inline NIChallenges recompute_challenges(const ShuffleStatement& st, const ProverCommitMessage& msg2) {
  const std::string sb = statement_bytes(st);
  return {derive_u(st.group(), sb, st.size()), derive_c(st.group(), sb, msg2_bytes(msg2))};
}

template <std::uniform_random_bit_generator Rng>
std::pair<NIProof, NIChallenges> prove_ni_traced(const ShuffleStatement& st, const ShuffleWitness& wit, Rng& rng) {
  const Group& G = st.group();
  const std::string sb = statement_bytes(st);
  VectorChallenge u = derive_u(G, sb, st.size());
  auto [session, msg2] = ProverSession::commit(st, wit, u, rng);
  Scalar c = derive_c(G, sb, msg2_bytes(msg2));
  Response resp = session.respond(c);
  return {NIProof{std::move(msg2), std::move(resp)}, NIChallenges{std::move(u), std::move(c)}};
}

/// Throws std::invalid_argument if the witness does not satisfy the relation.
template <std::uniform_random_bit_generator Rng>
NIProof prove_ni(const ShuffleStatement& st, const ShuffleWitness& wit, Rng& rng) {
  return prove_ni_traced(st, wit, rng).first;
}

inline VerifyResult verify_ni(const ShuffleStatement& st, const NIProof& proof) {
  auto ch = recompute_challenges(st, proof.msg2);
  return verify(st, Transcript{std::move(ch.u), proof.msg2, std::move(ch.c), proof.resp});
}

namespace codec {

inline Json encode(const NIProof& p) {
  Json j;
  j["msg2"] = encode(p.msg2);
  j["response"] = encode(p.resp);
  return j;
}

inline NIProof decode_proof(const Group& G, const Json& j, std::size_t n, std::size_t w) {
  return {decode_commit_message(G, field(j, "msg2"), n, w), decode_response(G, field(j, "response"), n, w)};
}

}  // namespace codec
}  // namespace pshuf
