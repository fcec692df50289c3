#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "ldct/config.hpp"
#include "ldct/scores.hpp"
#include "support/corpora.hpp"

namespace {

std::string write_file(const fixtures::TempDir& tmp, const std::string& name,
                       const std::string& body) {
  const std::string path = (tmp.path() / name).string();
  std::ofstream f(path);
  f << body;
  return path;
}

ldct::Dataset small_dataset(const fixtures::TempDir& tmp) {
  const auto path = write_file(tmp, "manifest.csv",
                               "id,image_path,label,patient_id,split\n"
                               "t1,i/t1.png,1,P1,test\n"
                               "t2,i/t2.png,0,P2,test\n"
                               "t3,i/t3.png,1,P3,test\n"
                               "tr1,i/tr1.png,0,P4,train\n");
  return ldct::load_manifest(path);
}

}  // namespace

TEST_CASE("read_scores parses and validates") {
  fixtures::TempDir tmp("sc1");
  const auto ok = write_file(tmp, "ok.csv", "id,score\nt1,0.9\nt2,0.25\n");
  const auto rows = ldct::read_scores(ok);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].id == "t1");
  CHECK(rows[1].score == 0.25);

  CHECK_THROWS_AS(ldct::read_scores(write_file(tmp, "h.csv", "id,prob\nt1,0.9\n")),
                  ldct::validation_error);
  CHECK_THROWS_AS(ldct::read_scores(write_file(tmp, "v.csv", "id,score\nt1,huh\n")),
                  ldct::validation_error);
  CHECK_THROWS_AS(ldct::read_scores(write_file(tmp, "r.csv", "id,score\nt1,1.2\n")),
                  ldct::validation_error);
  CHECK_THROWS_AS(ldct::read_scores(write_file(tmp, "d.csv", "id,score\nt1,0.5\nt1,0.6\n")),
                  ldct::validation_error);
  CHECK_THROWS_AS(ldct::read_scores((tmp.path() / "missing.csv").string()), ldct::io_error);
}

TEST_CASE("join_scores is a bijection with the test split") {
  fixtures::TempDir tmp("sc2");
  const auto ds = small_dataset(tmp);

  const auto good = ldct::read_scores(
      write_file(tmp, "g.csv", "id,score\nt3,0.7\nt1,0.9\nt2,0.1\n"));
  const auto preds = ldct::join_scores(good, ds);
  REQUIRE(preds.size() == 3);
  // Joined predictions follow manifest order, not score-file order.
  CHECK(preds[0].id == "t1");
  CHECK(preds[0].label == 1);
  CHECK(preds[0].score == 0.9);
  CHECK(preds[0].patient_id == "P1");

  auto expect_join_error = [&](const std::string& body, const std::string& needle) {
    const auto rows = ldct::read_scores(write_file(tmp, "e_" + needle + ".csv", body));
    try {
      ldct::join_scores(rows, ds);
      FAIL("expected join error");
    } catch (const ldct::validation_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_join_error("id,score\nt1,0.9\nt2,0.1\n", "t3");          // missing listed
  expect_join_error("id,score\nt1,0.9\nt2,0.1\nt3,0.7\nzz,0.5\n", "zz");  // extra listed
  expect_join_error("id,score\nt1,0.9\nt2,0.1\nt3,0.7\ntr1,0.5\n", "tr1");  // non-test rejected
}

TEST_CASE("write_scores/read_scores round trip") {
  fixtures::TempDir tmp("sc3");
  std::vector<ldct::Prediction> preds;
  for (int i = 0; i < 5; ++i) {
    ldct::Prediction p;
    p.id = "id" + std::to_string(i);
    p.score = i / 7.0;
    preds.push_back(p);
  }
  const std::string path = (tmp.path() / "s.csv").string();
  ldct::write_scores(preds, path);
  const auto rows = ldct::read_scores(path);
  REQUIRE(rows.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(rows[i].id == preds[i].id);
    CHECK(rows[i].score == preds[i].score);  // %.17g is lossless for doubles
  }
}

TEST_CASE("config defaults follow the experimental protocol") {
  const ldct::RunConfig cfg;
  CHECK(cfg.doses == std::vector<double>{1, 5, 10, 20, 40});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{7, 17, 27});
  CHECK(cfg.severities == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(cfg.threshold == 0.5);
  CHECK(cfg.bootstrap_n == 2000);
  CHECK(cfg.ece_bins == 15);
  CHECK(cfg.ci_level == 0.95);
}

TEST_CASE("config JSON round trip preserves the canonical dump") {
  ldct::RunConfig cfg;
  cfg.doses = {2.5, 10.0};
  cfg.severities = {1, 3};
  cfg.baseline.denoiser = ldct::DenoiserSpec::nlm(3, 9, 0.2);
  cfg.baseline.augment = ldct::AugmentConfig{};
  cfg.patient_level = true;
  cfg.pooling = ldct::PatientPooling::mean;
  cfg.manifest_path = "data/manifest.csv";
  const auto j = ldct::config_to_json(cfg);
  const ldct::RunConfig back = ldct::config_from_json(j);
  CHECK(ldct::config_to_json(back).dump() == j.dump());
  CHECK(ldct::config_hash(back) == ldct::config_hash(cfg));
}

TEST_CASE("config hash changes with content") {
  ldct::RunConfig a;
  ldct::RunConfig b;
  b.threshold = 0.6;
  CHECK(ldct::config_hash(a) != ldct::config_hash(b));
  CHECK(ldct::config_hash(a).size() == 16);
}

TEST_CASE("config validation rejects bad values") {
  ldct::RunConfig cfg;
  cfg.doses.clear();
  CHECK_THROWS_AS(ldct::validate_config(cfg), ldct::validation_error);
  cfg = {};
  cfg.threshold = 1.0;
  CHECK_THROWS_AS(ldct::validate_config(cfg), ldct::validation_error);
  cfg = {};
  cfg.doses = {0.0};
  CHECK_THROWS_AS(ldct::validate_config(cfg), ldct::validation_error);
  cfg = {};
  cfg.severities = {9};
  CHECK_THROWS_AS(ldct::validate_config(cfg), ldct::validation_error);
  cfg = {};
  cfg.seeds.clear();
  CHECK_THROWS_AS(ldct::validate_config(cfg), ldct::validation_error);
}

TEST_CASE("load_config reads files and reports parse errors") {
  fixtures::TempDir tmp("cfg1");
  const auto good = write_file(tmp, "c.json",
                               R"({"doses": [10, 40], "seeds": [7], "threshold": 0.4,
                                   "baseline": {"denoiser": {"kind": "gaussian", "sigma": 2.0}}})");
  const auto cfg = ldct::load_config(good);
  CHECK(cfg.doses == std::vector<double>{10, 40});
  CHECK(cfg.threshold == 0.4);
  CHECK(cfg.baseline.denoiser.kind == ldct::DenoiserSpec::Kind::gaussian);
  CHECK(cfg.baseline.denoiser.sigma == 2.0);

  CHECK_THROWS_AS(ldct::load_config(write_file(tmp, "bad.json", "{nope")),
                  ldct::validation_error);
  CHECK_THROWS_AS(ldct::load_config((tmp.path() / "gone.json").string()), ldct::io_error);
  CHECK_THROWS_AS(
      ldct::load_config(write_file(tmp, "p.json", R"({"patient_level": {"pooling": "median"}})")),
      ldct::validation_error);
  CHECK_THROWS_AS(
      ldct::load_config(write_file(
          tmp, "d.json", R"({"baseline": {"denoiser": {"kind": "bm3d"}}})")),
      ldct::validation_error);
}
