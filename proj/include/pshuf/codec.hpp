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

// Canonical JSON container, format "pshuf-1".
//
// Every file is an envelope {"version":"pshuf-1","kind":<kind>,"body":<body>}.
// Keys appear in the fixed order written by the encoders below, nothing is
// indented, and integers are lowercase big-endian hex without leading zeros.
// The compact dump of a statement envelope is the byte string hashed by the
// Fiat-Shamir transform, so encoder changes are format breaks.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pshuf/commit.hpp"
#include "pshuf/elgamal.hpp"
#include "pshuf/group.hpp"
#include "pshuf/matrix.hpp"
#include "pshuf/shuffle.hpp"
#include "pshuf/sigma.hpp"

namespace pshuf {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatVersion = "pshuf-1";

/// Malformed input: bad JSON, wrong kind or version, non-canonical hex, wrong shapes.
/// Values that parse but lie outside Z_q or G_q raise std::domain_error instead.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace codec {

// --- integers --------------------------------------------------------------

inline std::string to_hex(const mpz_class& v) { return v.get_str(16); }

inline mpz_class from_hex(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a hex string");
  const auto& s = j.get_ref<const std::string&>();
  if (s.empty()) throw FormatError("empty hex string");
  if (s.size() > 1 && s[0] == '0') throw FormatError("hex integer has leading zeros: " + s);
  for (char ch : s) {
    if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f'))) {
      throw FormatError("not a lowercase hex integer: " + s);
    }
  }
  return mpz_class(s, 16);
}

inline Json hex(const Scalar& s) { return to_hex(s.value()); }
inline Json hex(const Element& e) { return to_hex(e.value()); }

inline Scalar scalar(const Group& G, const Json& j) { return G.scalar(from_hex(j)); }
inline Element element(const Group& G, const Json& j) { return G.element(from_hex(j)); }

inline const Json& array(const Json& j, std::optional<std::size_t> len = std::nullopt) {
  if (!j.is_array()) throw FormatError("expected an array");
  if (len && j.size() != *len) {
    throw FormatError("array has length " + std::to_string(j.size()) + ", expected " + std::to_string(*len));
  }
  return j;
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw FormatError("expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

inline Json hex_array(const ScalarVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(hex(x));
  return a;
}
inline Json hex_array(const ElementVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(hex(x));
  return a;
}

inline ScalarVector scalars(const Group& G, const Json& j, std::optional<std::size_t> len = std::nullopt) {
  ScalarVector out;
  for (const auto& x : array(j, len)) out.push_back(scalar(G, x));
  return out;
}
inline ElementVector elements(const Group& G, const Json& j, std::optional<std::size_t> len = std::nullopt) {
  ElementVector out;
  for (const auto& x : array(j, len)) out.push_back(element(G, x));
  return out;
}

// --- envelope --------------------------------------------------------------

inline Json envelope(std::string_view kind, Json body) {
  Json j;
  j["version"] = kFormatVersion;
  j["kind"] = kind;
  j["body"] = std::move(body);
  return j;
}

/// Returns the body after checking version and kind.
inline const Json& open_envelope(const Json& j, std::string_view kind) {
  const auto& version = field(j, "version");
  if (!version.is_string() || version.get_ref<const std::string&>() != kFormatVersion) {
    throw FormatError("unsupported format version");
  }
  const auto& k = field(j, "kind");
  if (!k.is_string() || k.get_ref<const std::string&>() != kind) {
    throw FormatError("expected a '" + std::string(kind) + "' file");
  }
  return field(j, "body");
}

inline std::string canonical(const Json& j) { return j.dump(); }

inline Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

// --- group -----------------------------------------------------------------

inline Json encode(const GroupParams& p) {
  Json j;
  j["p"] = to_hex(p.p);
  j["q"] = to_hex(p.q);
  j["g"] = to_hex(p.g);
  return j;
}

/// Validates the parameters; presets are recognised and skip re-validation.
inline Group decode_group(const Json& j) {
  GroupParams p{from_hex(field(j, "p")), from_hex(field(j, "q")), from_hex(field(j, "g"))};
  for (auto preset : {Preset::toy, Preset::test160, Preset::prod2048}) {
    if (p == GroupParams::preset(preset)) return Group::preset(preset);
  }
  try {
    return Group(std::move(p));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

// --- commitment key --------------------------------------------------------

inline Json encode_key_elements(const CommitmentKey& key) {
  Json j;
  j["h"] = hex(key.h());
  j["basis"] = hex_array(key.basis());
  return j;
}

inline CommitmentKey decode_key_elements(const Group& G, const Json& j) {
  try {
    return CommitmentKey(G, element(G, field(j, "h")), elements(G, field(j, "basis")));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline Json encode(const CommitmentKey& key) {
  Json j;
  j["params"] = encode(key.group().params());
  j["h"] = hex(key.h());
  j["basis"] = hex_array(key.basis());
  return j;
}

inline CommitmentKey decode_commit_key(const Json& j) {
  return decode_key_elements(decode_group(field(j, "params")), j);
}

// --- ElGamal ---------------------------------------------------------------

/// Public-only key pairs omit "sk".
inline Json encode(const Group& G, const KeyPair& kp, bool include_secret = true) {
  Json j;
  j["params"] = encode(G.params());
  j["pk"] = hex(kp.pk);
  if (include_secret) j["sk"] = hex(kp.sk);
  return j;
}

struct DecodedKeyPair {
  Group group;
  Element pk;
  std::optional<Scalar> sk;
};

inline DecodedKeyPair decode_keypair(const Json& j) {
  Group G = decode_group(field(j, "params"));
  Element pk = element(G, field(j, "pk"));
  std::optional<Scalar> sk;
  if (j.contains("sk")) {
    sk = scalar(G, j["sk"]);
    if (!(G.exp_g(*sk) == pk)) throw FormatError("keypair: pk != g^sk");
  }
  return {G, pk, sk};
}

inline Json encode(const Ciphertext& e) { return Json::array({hex(e.a), hex(e.b)}); }

inline Json encode(const CiphertextVector& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(encode(e));
  return a;
}

inline Json encode(const std::vector<CiphertextVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(encode(v));
  return a;
}

inline Ciphertext decode_ciphertext(const Group& G, const Json& j) {
  const auto& pair = array(j, 2);
  return {element(G, pair[0]), element(G, pair[1])};
}

inline CiphertextVector decode_ciphertext_vector(const Group& G, const Json& j, std::optional<std::size_t> width) {
  CiphertextVector out;
  for (const auto& e : array(j, width)) out.push_back(decode_ciphertext(G, e));
  return out;
}

/// All vectors must share one width, which must be positive.
inline std::vector<CiphertextVector> decode_ciphertext_list(const Group& G, const Json& j,
                                                            std::optional<std::size_t> count,
                                                            std::optional<std::size_t> width) {
  std::vector<CiphertextVector> out;
  for (const auto& v : array(j, count)) {
    out.push_back(decode_ciphertext_vector(G, v, width));
    if (!width) width = out.back().size();
  }
  if (width && *width == 0) throw FormatError("ciphertext vectors must have positive width");
  return out;
}

struct CiphertextFile {
  Group group;
  std::vector<CiphertextVector> vectors;
};

inline Json encode_ciphertexts(const Group& G, const std::vector<CiphertextVector>& vs) {
  Json j;
  j["params"] = encode(G.params());
  j["width"] = vs.empty() ? 0 : vs.front().size();
  j["vectors"] = encode(vs);
  return j;
}

inline CiphertextFile decode_ciphertexts(const Json& j) {
  Group G = decode_group(field(j, "params"));
  const auto& w = field(j, "width");
  if (!w.is_number_unsigned()) throw FormatError("width must be a non-negative integer");
  return {G, decode_ciphertext_list(G, field(j, "vectors"), std::nullopt, w.get<std::size_t>())};
}

// --- statement and witness -------------------------------------------------

inline Json encode(const ShuffleStatement& st) {
  Json j;
  j["params"] = encode(st.group().params());
  j["commit_key"] = encode_key_elements(st.key);
  j["pk"] = hex(st.pk);
  j["c"] = hex_array(st.c);
  j["inputs"] = encode(st.inputs);
  j["outputs"] = encode(st.outputs);
  return j;
}

inline ShuffleStatement decode_statement(const Json& j) {
  Group G = decode_group(field(j, "params"));
  CommitmentKey key = decode_key_elements(G, field(j, "commit_key"));
  const std::size_t n = key.size();
  Element pk = element(G, field(j, "pk"));
  ElementVector c = elements(G, field(j, "c"), n);
  auto inputs = decode_ciphertext_list(G, field(j, "inputs"), n, std::nullopt);
  auto outputs = decode_ciphertext_list(G, field(j, "outputs"), n, inputs.front().size());
  ShuffleStatement st{std::move(key), std::move(pk), std::move(c), std::move(inputs), std::move(outputs)};
  try {
    st.check_shape();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return st;
}

/// The permutation is stored zero-based: entry i is p[i], with M(i, p[i]) = 1.
inline Json encode(const ShuffleWitness& w) {
  Json j;
  Json perm = Json::array();
  const Permutation p = matrix_to_perm(w.M);
  for (auto v : p.mapping()) perm.push_back(v);
  j["permutation"] = std::move(perm);
  j["r"] = hex_array(w.r);
  Json R = Json::array();
  for (std::size_t k = 0; k < w.R.rows(); ++k) R.push_back(hex_array(w.R.row(k)));
  j["R"] = std::move(R);
  return j;
}

inline ShuffleWitness decode_witness(const Group& G, const Json& j, std::size_t n, std::size_t width) {
  std::vector<std::size_t> mapping;
  for (const auto& v : array(field(j, "permutation"), n)) {
    if (!v.is_number_unsigned()) throw FormatError("permutation entries must be non-negative integers");
    mapping.push_back(v.get<std::size_t>());
  }
  Permutation perm;
  try {
    perm = Permutation(std::move(mapping));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  ScalarVector r = scalars(G, field(j, "r"), n);
  Matrix R(width, n);
  const auto& rows = array(field(j, "R"), width);
  for (std::size_t k = 0; k < width; ++k) {
    const ScalarVector row = scalars(G, rows[k], n);
    for (std::size_t i = 0; i < n; ++i) R(k, i) = row[i];
  }
  return {perm_to_matrix(G, perm), std::move(r), std::move(R)};
}

// --- proof -----------------------------------------------------------------

inline Json encode(const ProverCommitMessage& m) {
  Json j;
  j["c_hat"] = hex_array(m.c_hat);
  j["t1"] = hex(m.t1);
  j["t2"] = hex(m.t2);
  j["t3"] = hex(m.t3);
  j["t4"] = encode(m.t4);
  j["t_hat"] = hex_array(m.t_hat);
  return j;
}

inline Json encode(const Response& s) {
  Json j;
  j["s1"] = hex(s.s1);
  j["s2"] = hex(s.s2);
  j["s3"] = hex(s.s3);
  j["s4"] = hex_array(s.s4);
  j["s_hat"] = hex_array(s.s_hat);
  j["s_prime"] = hex_array(s.s_prime);
  return j;
}

inline ProverCommitMessage decode_commit_message(const Group& G, const Json& j, std::size_t n, std::size_t w) {
  ProverCommitMessage m;
  m.c_hat = elements(G, field(j, "c_hat"), n);
  m.t1 = element(G, field(j, "t1"));
  m.t2 = element(G, field(j, "t2"));
  m.t3 = element(G, field(j, "t3"));
  m.t4 = decode_ciphertext_vector(G, field(j, "t4"), w);
  m.t_hat = elements(G, field(j, "t_hat"), n);
  return m;
}

inline Response decode_response(const Group& G, const Json& j, std::size_t n, std::size_t w) {
  Response s;
  s.s1 = scalar(G, field(j, "s1"));
  s.s2 = scalar(G, field(j, "s2"));
  s.s3 = scalar(G, field(j, "s3"));
  s.s4 = scalars(G, field(j, "s4"), w);
  s.s_hat = scalars(G, field(j, "s_hat"), n);
  s.s_prime = scalars(G, field(j, "s_prime"), n);
  return s;
}

/// Runs a decoder, turning nlohmann exceptions into FormatError.
template <typename F>
auto guarded(F&& decode) -> decltype(decode()) {
  try {
    return decode();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace codec
}  // namespace pshuf
