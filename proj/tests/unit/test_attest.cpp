#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "sdpolicy/attest/backend.hpp"
#include "sdpolicy/attest/ledger.hpp"
#include "sdpolicy/rng.hpp"
#include "sdpolicy/rules/rules.hpp"

using namespace sdpolicy;
using namespace sdpolicy::attest;

namespace {

SeriesData demo_series(double pi, double x) {
  SeriesData d;
  d.series_id = "cpi-gap";
  d.period_start = 1;
  d.period_end = 1;
  d.values = {pi, x};
  return d;
}

struct Fixture {
  std::unique_ptr<ProofBackend> backend = transparent_backend();
  KeyPair provider = KeyPair::from_seed_u64(101);
  KeyPair miner = KeyPair::from_seed_u64(202);
  Ledger ledger;

  Fixture()
      : ledger(Ledger::init(money_growth_circuit(),
                            money_growth_circuit().params, *backend)) {
    ledger.register_provider("fred", provider.pk);
    ledger.register_miner("m1", miner.pk);
  }

  EconomicSeriesRecord publish(double pi, double x) {
    return ledger.authenticate_data("fred", provider, demo_series(pi, x));
  }
};

}  // namespace

TEST_CASE("wire round trip") {
  Writer w;
  w.str("abc");
  w.u64(0x1122334455667788ULL);
  w.f64(-0.125);
  w.f64_list({1.0, 2.0});
  Reader r(w.data());
  CHECK(r.str() == "abc");
  CHECK(r.u64() == 0x1122334455667788ULL);
  CHECK(r.f64() == -0.125);
  CHECK(r.f64_list() == std::vector<double>{1.0, 2.0});
  r.expect_done();
}

TEST_CASE("hex round trip and truncation detection") {
  const Bytes b{0x00, 0xff, 0x10, 0xab};
  CHECK(from_hex(to_hex(b)) == b);
  CHECK_THROWS(from_hex("abc"));
  Writer w;
  w.u32(7);
  Reader r(w.data());
  r.u32();
  CHECK_THROWS(r.u32());
}

TEST_CASE("signatures verify and are deterministic") {
  const auto kp = KeyPair::from_seed_u64(7);
  const Bytes msg{1, 2, 3};
  const auto sig1 = sign(kp.sk, msg);
  const auto sig2 = sign(kp.sk, msg);
  CHECK(sig1 == sig2);
  CHECK(verify_sig(kp.pk, msg, sig1));
  Bytes tampered = msg;
  tampered[0] ^= 1;
  CHECK_FALSE(verify_sig(kp.pk, tampered, sig1));
}

TEST_CASE("circuit evaluation matches the policy evaluator") {
  const auto c = money_growth_circuit();
  const double mu_ss = c.params[3];
  const double pi_ss = c.params[4];
  const double x_ss = c.params[5];
  SUBCASE("steady state inputs return the steady state") {
    CHECK(eval_circuit(c, {pi_ss, x_ss}, {mu_ss}) == doctest::Approx(mu_ss));
  }
  SUBCASE("two percent inflation gap with rho_mpi=-0.5") {
    CircuitDescriptor strong = c;
    strong.params[0] = 0.0;   // rho_mm
    strong.params[1] = -0.5;  // rho_mpi
    strong.params[2] = 0.0;   // rho_mx
    const double mu =
        eval_circuit(strong, {pi_ss * std::exp(0.02), x_ss}, {mu_ss});
    CHECK(std::log(mu / mu_ss) == doctest::Approx(-0.01));
  }
  SUBCASE("invalid values rejected") {
    CHECK_THROWS_AS(eval_circuit(c, {0.0, x_ss}, {mu_ss}),
                    std::invalid_argument);
    CHECK_THROWS_AS(eval_circuit(c, {pi_ss}, {mu_ss}), std::invalid_argument);
    CircuitDescriptor unknown{"other", {}};
    CHECK_THROWS_AS(eval_circuit(unknown, {}, {}), std::invalid_argument);
  }
}

TEST_CASE("backend completeness and binding") {
  auto backend = transparent_backend();
  const auto c = money_growth_circuit();
  const auto art = backend->setup(c);
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> pub = {1.0 + 0.01 * rng.uniform(),
                                     1.0 + 0.01 * rng.uniform()};
    const std::vector<double> priv = {1.0 + 0.01 * rng.uniform()};
    const double out = eval_circuit(c, pub, priv);
    const auto proof =
        backend->prove(art.proving, c.params, pub, priv, out, Hash256{});
    CHECK(backend->verify(art.verification, proof, c.params, pub, out,
                          Hash256{}));
    // Tampering any public part must fail.
    CHECK_FALSE(backend->verify(art.verification, proof, c.params, pub,
                                out + 1e-9, Hash256{}));
    auto pub2 = pub;
    pub2[0] += 1e-9;
    CHECK_FALSE(backend->verify(art.verification, proof, c.params, pub2, out,
                                Hash256{}));
    Hash256 h2{};
    h2[0] = 1;
    CHECK_FALSE(backend->verify(art.verification, proof, c.params, pub, out, h2));
  }
}

TEST_CASE("distinct private inputs commit differently") {
  auto backend = transparent_backend();
  const auto c = money_growth_circuit();
  const auto art = backend->setup(c);
  Rng rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> pub = {1.005, 1.0};
    const std::vector<double> priv1 = {1.0 + rng.uniform()};
    const std::vector<double> priv2 = {1.0 + rng.uniform() + 2.0};
    const auto p1 =
        backend->prove(art.proving, c.params, pub, priv1, 1.0, Hash256{});
    const auto p2 =
        backend->prove(art.proving, c.params, pub, priv2, 1.0, Hash256{});
    CHECK(p1.commitment != p2.commitment);
  }
}

TEST_CASE("ledger happy path") {
  Fixture f;
  const auto rec = f.publish(1.006, 1.001);
  CHECK(rec.h == sha256(rec.data.canonical()));
  const auto tx = f.ledger.commit_policy("m1", f.miner, {1.006, 1.001},
                                         {1.005}, rec.h, *f.backend);
  CHECK(tx.output_miner ==
        doctest::Approx(eval_circuit(f.ledger.circuit(), {1.006, 1.001},
                                     {1.005})));
  const auto res = f.ledger.validate(tx, *f.backend);
  CHECK(res.accepted);
  CHECK(f.ledger.accepted().size() == 1);
}

TEST_CASE("each reject reason fires distinctly") {
  Fixture f;
  const auto rec = f.publish(1.006, 1.001);
  const auto good = f.ledger.commit_policy("m1", f.miner, {1.006, 1.001},
                                           {1.005}, rec.h, *f.backend);
  REQUIRE(f.ledger.validate(good, *f.backend).accepted);

  SUBCASE("unknown hash") {
    auto tx = f.ledger.commit_policy("m1", f.miner, {1.006, 1.001}, {1.005},
                                     rec.h, *f.backend);
    tx.h[0] ^= 0xff;
    tx.miner_sig = sign(f.miner.sk, tx.signed_body());
    const auto res = f.ledger.validate(tx, *f.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kUnknownHash);
  }
  SUBCASE("bad provider signature") {
    // The record was signed under a key other than the registered one.
    const auto rogue = KeyPair::from_seed_u64(303);
    Fixture f2;
    const auto rec2 =
        f2.ledger.authenticate_data("fred", rogue, demo_series(1.002, 1.0));
    const auto tx = f2.ledger.commit_policy("m1", f2.miner, {1.002, 1.0},
                                            {1.001}, rec2.h, *f2.backend);
    const auto res = f2.ledger.validate(tx, *f2.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kBadProviderSignature);
  }
  SUBCASE("bad miner signature") {
    auto tx = f.ledger.commit_policy("m1", f.miner, {1.006, 1.001}, {1.005},
                                     rec.h, *f.backend);
    tx.miner_sig[0] ^= 1;
    const auto res = f.ledger.validate(tx, *f.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kBadMinerSignature);
  }
  SUBCASE("unregistered miner is a signature failure") {
    const auto rogue = KeyPair::from_seed_u64(999);
    auto tx = f.ledger.commit_policy("ghost", rogue, {1.006, 1.001}, {1.005},
                                     rec.h, *f.backend);
    const auto res = f.ledger.validate(tx, *f.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kBadMinerSignature);
  }
  SUBCASE("replayed nonce") {
    const auto res = f.ledger.validate(good, *f.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kReplayedNonce);
  }
  SUBCASE("tampered output") {
    auto tx = f.ledger.commit_policy("m1", f.miner, {1.006, 1.001}, {1.005},
                                     rec.h, *f.backend);
    tx.output_miner += 1e-6;
    tx.miner_sig = sign(f.miner.sk, tx.signed_body());
    const auto res = f.ledger.validate(tx, *f.backend);
    REQUIRE_FALSE(res.accepted);
    CHECK(*res.reason == RejectReason::kProofInvalid);
  }
}

TEST_CASE("two providers signing the same data yield distinct valid records") {
  Fixture f;
  const auto second = KeyPair::from_seed_u64(404);
  f.ledger.register_provider("ecb", second.pk);
  const auto r1 = f.ledger.authenticate_data("fred", f.provider,
                                             demo_series(1.003, 1.0));
  const auto r2 =
      f.ledger.authenticate_data("ecb", second, demo_series(1.003, 1.0));
  CHECK(r1.h == r2.h);  // same data_public, same content hash
  CHECK(r1.s_econ != r2.s_econ);
  CHECK(r1.canonical() != r2.canonical());
  // A transaction referencing the shared hash validates against the first
  // stored record, which is provider-signed.
  const auto tx = f.ledger.commit_policy("m1", f.miner, {1.003, 1.0}, {1.002},
                                         r1.h, *f.backend);
  CHECK(f.ledger.validate(tx, *f.backend).accepted);
}

TEST_CASE("unregistered provider cannot authenticate") {
  Fixture f;
  const auto keys = KeyPair::from_seed_u64(909);
  CHECK_THROWS_AS(f.ledger.authenticate_data("ghost", keys,
                                             demo_series(1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("commit against a missing record throws") {
  Fixture f;
  Hash256 missing{};
  missing[5] = 9;
  CHECK_THROWS_AS(f.ledger.commit_policy("m1", f.miner, {1.0, 1.0}, {1.0},
                                         missing, *f.backend),
                  std::invalid_argument);
}

TEST_CASE("unknown circuit and duplicate registration") {
  auto backend = transparent_backend();
  CircuitDescriptor bogus{"nope", {}};
  CHECK_THROWS_AS(Ledger::init(bogus, {}, *backend), std::invalid_argument);
  Fixture f;
  CHECK_THROWS_AS(f.ledger.register_provider("fred", f.provider.pk),
                  std::invalid_argument);
}

TEST_CASE("serialization round trip re-verifies byte-exact") {
  Fixture f;
  const auto rec = f.publish(1.004, 0.999);
  const auto tx = f.ledger.commit_policy("m1", f.miner, {1.004, 0.999},
                                         {1.002}, rec.h, *f.backend);
  REQUIRE(f.ledger.validate(tx, *f.backend).accepted);

  const std::string text = f.ledger.serialize();
  auto backend2 = transparent_backend();
  const auto reloaded = Ledger::load_from_text(text, *backend2);
  CHECK(reloaded.serialize() == text);
  CHECK(reloaded.accepted().size() == 1);
  CHECK(reloaded.tip() == f.ledger.tip());

  SUBCASE("double init rejected on load") {
    std::string twice = text;
    const auto first_line = text.substr(0, text.find('\n') + 1);
    twice += first_line;
    CHECK_THROWS(Ledger::load_from_text(twice, *backend2));
  }
  SUBCASE("any byte flip is detected") {
    for (const std::size_t pos : {std::size_t(20), text.size() / 2}) {
      std::string bad = text;
      // Flip within a hex payload: swap a digit for another.
      bad[pos] = bad[pos] == '0' ? '1' : '0';
      CHECK_THROWS(Ledger::load_from_text(bad, *backend2));
    }
  }
}

TEST_CASE("identical inputs and keys produce identical ledgers") {
  const auto build = [] {
    Fixture f;
    const auto rec = f.publish(1.01, 1.0);
    const auto tx = f.ledger.commit_policy("m1", f.miner, {1.01, 1.0},
                                           {1.005}, rec.h, *f.backend);
    f.ledger.validate(tx, *f.backend);
    return f.ledger.serialize();
  };
  CHECK(build() == build());
}
