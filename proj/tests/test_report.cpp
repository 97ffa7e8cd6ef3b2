#include <gtest/gtest.h>

#include "folddcs/report.hpp"

using namespace folddcs;
using nlohmann::json;

namespace {

struct Fixture {
  PrimeField F{101};
  Domain H = Domain::from_points(F, {F.elem(0), F.elem(1), F.elem(2)});
  MPoly f = MPoly(F, 4, 2, 8);
  Seed seed = seed_from_u64(11);

  Fixture() {
    SeededPrng rng(seed_from_u64(1));
    f = random_poly_terms(F, 4, 2, 8, 5, rng);
  }

  RunResult run() const {
    SeededPrng rng(seed);
    PrngCoins coins(rng);
    return run_fold_dcs(FoldInstance{f, H, sum_over_cube(f, H)}, coins);
  }
};

}  // namespace

TEST(Report, Sha256KnownAnswers) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, RunJsonSchema) {
  const Fixture fx;
  const RunResult r = fx.run();
  const json j = run_json(r, fx.f, fx.seed, "fold");
  EXPECT_EQ(j.at("schema"), kJsonSchema);
  EXPECT_EQ(j.at("protocol"), "fold");
  EXPECT_EQ(j.at("accept"), true);
  EXPECT_EQ(j.at("reason"), to_string(RejectReason::kNone));
  EXPECT_EQ(j.at("seed"), seed_to_hex(fx.seed));
  EXPECT_EQ(j.at("instance_digest"), sha256_hex(fx.f.to_text()));
  EXPECT_EQ(j.at("field"), 101u);
  EXPECT_EQ(j.at("mu"), 4u);
  EXPECT_EQ(j.at("d"), 2u);
  EXPECT_EQ(j.at("D"), 8u);
  EXPECT_EQ(j.at("final_sum"), r.final_sum->value());

  const json& t = j.at("transcript");
  ASSERT_TRUE(t.at("moves").is_array());
  EXPECT_EQ(t.at("moves").size(), r.transcript.moves().size());
  std::size_t queries = 0, challenges = 0;
  for (const auto& mv : t.at("moves")) {
    const std::string type = mv.at("type");
    const std::string dir = mv.at("direction");
    if (type == "challenge") {
      EXPECT_EQ(dir, "V->P");
      challenges += mv.at("values").size();
    } else {
      EXPECT_EQ(dir, "P->V");
    }
    if (type == "query") ++queries;
  }
  const json& m = t.at("metrics");
  EXPECT_EQ(m.at("oracle_queries"), queries);
  EXPECT_EQ(m.at("verifier_random_elements"), challenges);
  EXPECT_EQ(m.at("rounds"), 3u);
  EXPECT_TRUE(m.at("prover_summation").contains("adds"));
}

TEST(Report, RunJsonIsByteStable) {
  const Fixture fx;
  EXPECT_EQ(run_json(fx.run(), fx.f, fx.seed, "fold").dump(),
            run_json(fx.run(), fx.f, fx.seed, "fold").dump());
}

TEST(Report, SoundnessJson) {
  SoundnessReport r;
  r.protocol = LabProtocol::kStd;
  r.strategy = Strategy{StrategyKind::kGreedyClaimedSum};
  r.q = 7;
  r.trials = 100;
  r.acceptances = 25;
  r.estimate = 0.25;
  r.bound = 13.0 / 49.0;
  r.within_bound = true;
  const json j = soundness_json(r);
  EXPECT_EQ(j.at("schema"), kJsonSchema);
  EXPECT_EQ(j.at("protocol"), to_string(LabProtocol::kStd));
  EXPECT_EQ(j.at("strategy"), "greedy");
  EXPECT_EQ(j.at("acceptances"), 25u);
  EXPECT_EQ(j.at("within_bound"), true);
  for (const char* k : {"q", "mu", "d", "D", "trials", "estimate", "stderr", "bound"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
}

TEST(Report, TablesJsonMarksInformationalCells) {
  TableConfig cfg;
  cfg.mus = {2};
  const auto cells = build_tables(cfg);
  const json j = tables_json(cells);
  EXPECT_EQ(j.at("schema"), kJsonSchema);
  ASSERT_EQ(j.at("cells").size(), cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const json& c = j.at("cells")[i];
    if (cells[i].kind == CellKind::kInformational) {
      EXPECT_TRUE(c.at("match").is_null());
    } else {
      EXPECT_EQ(c.at("match"), cells[i].ok());
    }
    if (!cells[i].formula_value) EXPECT_TRUE(c.at("formula_value").is_null());
  }
}

TEST(Report, PcsReportJson) {
  PcsReport r;
  r.input_commitment = "ab";
  r.commitments = {"01", "02"};
  r.batch_ells = {6};
  const json j = pcs_report_json(r);
  EXPECT_EQ(j.at("batch_ells"), json::array({6}));
  EXPECT_EQ(j.at("commitments").size(), 2u);
  EXPECT_EQ(j.at("evaluations_ok"), true);
}
