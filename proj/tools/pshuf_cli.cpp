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

// pshuf: command-line front end for shuffling, proving and verifying.
//
// Exit codes: 0 success / accept, 1 verification reject, 2 usage or format error.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "pshuf/pshuf.hpp"
#include "pshuf/testing/rewind.hpp"

namespace {

using namespace pshuf;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

/// Usage or format problem; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << codec::canonical(j) << '\n';
  if (!out) throw UsageError("write failed: " + path);
}

/// Body of an envelope of the given kind.
Json load(const std::string& path, std::string_view kind) {
  Json j = codec::parse(read_file(path));
  return codec::guarded([&] { return codec::open_envelope(j, kind); });
}

Drbg make_rng(const std::string& seed) {
  if (!seed.empty()) return Drbg(std::string_view(seed));
  std::random_device rd;
  std::array<std::uint8_t, 32> bytes{};
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rd());
  return Drbg(std::span<const std::uint8_t>(bytes));
}

Group load_group(const std::string& path) {
  Json body = load(path, "params");
  return codec::guarded([&] { return codec::decode_group(body); });
}

codec::DecodedKeyPair load_keypair(const std::string& path) {
  Json body = load(path, "keypair");
  return codec::guarded([&] { return codec::decode_keypair(body); });
}

CommitmentKey load_commit_key(const std::string& path) {
  Json body = load(path, "commit-key");
  return codec::guarded([&] { return codec::decode_commit_key(body); });
}

ShuffleStatement load_statement(const std::string& path) {
  Json body = load(path, "statement");
  return codec::guarded([&] { return codec::decode_statement(body); });
}

void require_same_group(const Group& a, const Group& b, const std::string& what) {
  if (!(a == b)) throw UsageError(what + " uses different group parameters");
}

// --- subcommands -----------------------------------------------------------

struct GenParamsArgs {
  std::string preset;
  std::string out;
};

int gen_params(const GenParamsArgs& a) {
  auto preset = parse_preset(a.preset);
  if (!preset) throw UsageError("unknown preset '" + a.preset + "' (toy, test160, prod2048)");
  write_file(a.out, codec::envelope("params", codec::encode(Group::preset(*preset).params())));
  return kOk;
}

struct KeygenArgs {
  std::string params;
  std::string seed;
  std::string out;
  std::string public_out;
};

int keygen_cmd(const KeygenArgs& a) {
  Group G = load_group(a.params);
  Drbg rng = make_rng(a.seed);
  KeyPair kp = keygen(G, rng);
  write_file(a.out, codec::envelope("keypair", codec::encode(G, kp)));
  if (!a.public_out.empty()) write_file(a.public_out, codec::envelope("keypair", codec::encode(G, kp, false)));
  return kOk;
}

struct CommitKeyArgs {
  std::string params;
  std::size_t n = 0;
  std::string seed;
  std::string out;
};

int gen_commit_key_cmd(const CommitKeyArgs& a) {
  Group G = load_group(a.params);
  if (a.n == 0) throw UsageError("--n must be at least 1");
  CommitmentKey key = [&] {
    try {
      return gen_commit_key(G, a.n, a.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  write_file(a.out, codec::envelope("commit-key", codec::encode(key)));
  return kOk;
}

struct EncryptArgs {
  std::string params;
  std::string pk;
  std::size_t n = 0;
  std::size_t w = 0;
  std::string seed;
  std::string out;
};

/// Encrypts n x w uniformly random plaintexts.
int encrypt_cmd(const EncryptArgs& a) {
  Group G = load_group(a.params);
  auto kp = load_keypair(a.pk);
  require_same_group(G, kp.group, "public key");
  if (a.n == 0 || a.w == 0) throw UsageError("--n and --w must be at least 1");
  Drbg rng = make_rng(a.seed);
  std::vector<CiphertextVector> vs;
  for (std::size_t i = 0; i < a.n; ++i) {
    ElementVector m;
    for (std::size_t k = 0; k < a.w; ++k) m.push_back(G.random_element(rng));
    vs.push_back(enc_vec(G, kp.pk, m, G.random_scalars(rng, a.w)));
  }
  write_file(a.out, codec::envelope("ciphertexts", codec::encode_ciphertexts(G, vs)));
  return kOk;
}

struct DecryptArgs {
  std::string keypair;
  std::string in;
};

/// Prints one line of hex plaintexts per ciphertext vector. Accepts a
/// ciphertexts file or a statement (whose outputs are decrypted).
int decrypt_cmd(const DecryptArgs& a) {
  auto kp = load_keypair(a.keypair);
  if (!kp.sk) throw UsageError("key pair file has no secret key");
  Json j = codec::parse(read_file(a.in));
  std::vector<CiphertextVector> vs;
  const Group& G = kp.group;
  codec::guarded([&] {
    const auto& kind = codec::field(j, "kind");
    if (kind == "statement") {
      auto st = codec::decode_statement(codec::open_envelope(j, "statement"));
      require_same_group(G, st.group(), "statement");
      vs = st.outputs;
    } else {
      auto file = codec::decode_ciphertexts(codec::open_envelope(j, "ciphertexts"));
      require_same_group(G, file.group, "ciphertext file");
      vs = file.vectors;
    }
    return 0;
  });
  for (const auto& v : vs) {
    std::string line;
    for (const auto& e : v) {
      if (!line.empty()) line += ' ';
      line += codec::to_hex(dec(G, *kp.sk, e).value());
    }
    std::cout << line << '\n';
  }
  return kOk;
}

struct ShuffleArgs {
  std::string params;
  std::string pk;
  std::string commit_key;
  std::string in;
  std::string seed;
  std::string out_statement;
  std::string out_witness;
};

int shuffle_cmd(const ShuffleArgs& a) {
  Group G = load_group(a.params);
  auto kp = load_keypair(a.pk);
  CommitmentKey key = load_commit_key(a.commit_key);
  Json body = load(a.in, "ciphertexts");
  auto file = codec::guarded([&] { return codec::decode_ciphertexts(body); });
  require_same_group(G, kp.group, "public key");
  require_same_group(G, key.group(), "commitment key");
  require_same_group(G, file.group, "ciphertext file");
  if (file.vectors.size() != key.size()) {
    throw UsageError("commitment key has N = " + std::to_string(key.size()) + " but input has " +
                     std::to_string(file.vectors.size()) + " vectors");
  }
  Drbg rng = make_rng(a.seed);
  auto inst = shuffle(key, kp.pk, std::move(file.vectors), rng);
  write_file(a.out_statement, codec::envelope("statement", codec::encode(inst.statement)));
  write_file(a.out_witness, codec::envelope("witness", codec::encode(inst.witness)));
  return kOk;
}

struct ProveArgs {
  std::string statement;
  std::string witness;
  std::string seed;
  std::string out;
};

int prove_cmd(const ProveArgs& a) {
  ShuffleStatement st = load_statement(a.statement);
  Json body = load(a.witness, "witness");
  ShuffleWitness wit =
      codec::guarded([&] { return codec::decode_witness(st.group(), body, st.size(), st.width()); });
  if (!check_relation(st, wit)) throw UsageError("witness does not match statement");
  Drbg rng = make_rng(a.seed);
  NIProof proof = prove_ni(st, wit, rng);
  write_file(a.out, codec::envelope("proof", codec::encode(proof)));
  return kOk;
}

struct VerifyArgs {
  std::string statement;
  std::string proof;
};

int verify_cmd(const VerifyArgs& a) {
  ShuffleStatement st = load_statement(a.statement);
  Json body = load(a.proof, "proof");
  NIProof proof;
  try {
    proof = codec::guarded([&] { return codec::decode_proof(st.group(), body, st.size(), st.width()); });
  } catch (const std::domain_error& e) {
    std::cout << "REJECT equation 0: " << e.what() << '\n';
    return kReject;
  }
  VerifyResult r = verify_ni(st, proof);
  if (r.accepted) {
    std::cout << "ACCEPT\n";
    return kOk;
  }
  std::cout << "REJECT equation " << r.failed_equation << ": " << r.reason << '\n';
  return kReject;
}

struct DemoArgs {
  std::string params;
  std::string pk;
  std::string commit_key;
  std::size_t n = 0;
  std::size_t w = 1;
  std::string seed;
};

constexpr std::size_t kDemoMaxN = 8;

/// Shuffles random ciphertexts, runs the interactive prover, rewinds it and
/// extracts the permutation, which is compared against the shuffler's.
int demo_extract_cmd(const DemoArgs& a) {
  if (a.n == 0 || a.n > kDemoMaxN) throw UsageError("--n must be between 1 and 8");
  if (a.w == 0) throw UsageError("--w must be at least 1");
  Group G = load_group(a.params);
  auto kp = load_keypair(a.pk);
  CommitmentKey full_key = load_commit_key(a.commit_key);
  require_same_group(G, kp.group, "public key");
  require_same_group(G, full_key.group(), "commitment key");
  if (full_key.size() < a.n) throw UsageError("commitment key has fewer than --n basis elements");
  // Keys are generated prefix-stably, so the first n elements form the size-n key.
  const CommitmentKey key(G, full_key.h(),
                          ElementVector(full_key.basis().begin(), full_key.basis().begin() + static_cast<long>(a.n)));

  Drbg rng = make_rng(a.seed);
  std::vector<CiphertextVector> inputs;
  for (std::size_t i = 0; i < a.n; ++i) {
    ElementVector m;
    for (std::size_t k = 0; k < a.w; ++k) m.push_back(G.random_element(rng));
    inputs.push_back(enc_vec(G, kp.pk, m, G.random_scalars(rng, a.w)));
  }
  auto inst = shuffle(key, kp.pk, std::move(inputs), rng);
  auto run = testing::extract_from_honest_prover(inst.statement, inst.witness, rng);

  const auto* extracted = std::get_if<ExtendedWitness>(&run.outcome);
  if (extracted == nullptr) {
    std::cout << "extraction produced a commitment break\nFAIL\n";
    return kReject;
  }
  const Permutation recovered = matrix_to_perm(extracted->M);
  const Permutation truth = matrix_to_perm(inst.witness.M);
  std::cout << "recovered permutation (output <- input):";
  for (std::size_t i = 0; i < recovered.size(); ++i) std::cout << ' ' << i << "<-" << recovered[i];
  std::cout << '\n';
  std::cout << "singular retries: " << run.singular_retries << '\n';
  const bool pass = recovered == truth && *extracted == inst.witness && check_relation(inst.statement, *extracted);
  std::cout << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pshuf: verifiable parallel ElGamal shuffle"};
  app.require_subcommand(1);

  GenParamsArgs gp;
  auto* c_gp = app.add_subcommand("gen-params", "Write a group parameter preset");
  c_gp->add_option("--preset", gp.preset, "toy | test160 | prod2048")->required();
  c_gp->add_option("--out", gp.out)->required();

  KeygenArgs kg;
  auto* c_kg = app.add_subcommand("keygen", "Generate an ElGamal key pair");
  c_kg->add_option("--params", kg.params)->required();
  c_kg->add_option("--seed", kg.seed);
  c_kg->add_option("--out", kg.out)->required();
  c_kg->add_option("--public-out", kg.public_out, "Also write a public-only key pair file");

  CommitKeyArgs ck;
  auto* c_ck = app.add_subcommand("gen-commit-key", "Derive commitment parameters h, h_1..h_N");
  c_ck->add_option("--params", ck.params)->required();
  c_ck->add_option("--n", ck.n)->required();
  c_ck->add_option("--seed", ck.seed)->required();
  c_ck->add_option("--out", ck.out)->required();

  EncryptArgs en;
  auto* c_en = app.add_subcommand("encrypt", "Encrypt N x w random plaintexts");
  c_en->add_option("--params", en.params)->required();
  c_en->add_option("--pk", en.pk)->required();
  c_en->add_option("--n", en.n)->required();
  c_en->add_option("--w", en.w)->required();
  c_en->add_option("--seed", en.seed);
  c_en->add_option("--out", en.out)->required();

  DecryptArgs de;
  auto* c_de = app.add_subcommand("decrypt", "Decrypt a ciphertext file or a statement's outputs");
  c_de->add_option("--keypair", de.keypair)->required();
  c_de->add_option("--in", de.in)->required();

  ShuffleArgs sh;
  auto* c_sh = app.add_subcommand("shuffle", "Re-encrypt and permute ciphertext vectors");
  c_sh->add_option("--params", sh.params)->required();
  c_sh->add_option("--pk", sh.pk)->required();
  c_sh->add_option("--commit-key", sh.commit_key)->required();
  c_sh->add_option("--in", sh.in)->required();
  c_sh->add_option("--seed", sh.seed);
  c_sh->add_option("--out-statement", sh.out_statement)->required();
  c_sh->add_option("--out-witness", sh.out_witness)->required();

  ProveArgs pr;
  auto* c_pr = app.add_subcommand("prove", "Produce a non-interactive shuffle proof");
  c_pr->add_option("--statement", pr.statement)->required();
  c_pr->add_option("--witness", pr.witness)->required();
  c_pr->add_option("--seed", pr.seed);
  c_pr->add_option("--out", pr.out)->required();

  VerifyArgs ve;
  auto* c_ve = app.add_subcommand("verify", "Verify a non-interactive shuffle proof");
  c_ve->add_option("--statement", ve.statement)->required();
  c_ve->add_option("--proof", ve.proof)->required();

  DemoArgs dm;
  auto* c_dm = app.add_subcommand("demo-extract", "Rewind an honest prover and extract its permutation");
  c_dm->add_option("--params", dm.params)->required();
  c_dm->add_option("--pk", dm.pk)->required();
  c_dm->add_option("--commit-key", dm.commit_key)->required();
  c_dm->add_option("--n", dm.n)->required();
  c_dm->add_option("--w", dm.w);
  c_dm->add_option("--seed", dm.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_gp) return gen_params(gp);
    if (*c_kg) return keygen_cmd(kg);
    if (*c_ck) return gen_commit_key_cmd(ck);
    if (*c_en) return encrypt_cmd(en);
    if (*c_de) return decrypt_cmd(de);
    if (*c_sh) return shuffle_cmd(sh);
    if (*c_pr) return prove_cmd(pr);
    if (*c_ve) return verify_cmd(ve);
    if (*c_dm) return demo_extract_cmd(dm);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
