#include <doctest.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "support/testutil.hpp"

using nlohmann::json;
using testutil::RunResult;
using testutil::TempDir;
using testutil::read_file;
using testutil::run_cli;
using testutil::write_file;

TEST_CASE("gen-data writes deterministic CSV files") {
  TempDir tmp;
  const std::string a = (tmp / "a.csv").string();
  const std::string b = (tmp / "b.csv").string();

  RunResult r1 = run_cli({"gen-data", "--rows", "100", "--seed", "7", "--out", a});
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.err.empty());
  RunResult r2 = run_cli({"gen-data", "--rows", "100", "--seed", "7", "--out", b});
  REQUIRE(r2.exit_code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a).substr(0, 3) == "id,");
}

TEST_CASE("gen-data emits a parseable json summary") {
  TempDir tmp;
  const std::string out = (tmp / "g.csv").string();
  RunResult r = run_cli({"gen-data", "--rows", "25", "--seed", "3", "--out", out,
                         "--output", "json"});
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["rows"] == 25);
  CHECK(doc["seed"] == 3);
  CHECK(doc["paper_fixture"] == false);
  CHECK(doc["out"] == out);
}

TEST_CASE("gen-data validates flags") {
  TempDir tmp;
  const std::string out = (tmp / "x.csv").string();
  CHECK(run_cli({"gen-data", "--rows", "0", "--out", out}).exit_code == 1);
  RunResult fixture_small =
      run_cli({"gen-data", "--rows", "100", "--paper-fixture", "--out", out});
  CHECK(fixture_small.exit_code == 1);
  CHECK(fixture_small.out.empty());
  CHECK(!fixture_small.err.empty());
  RunResult unwritable = run_cli(
      {"gen-data", "--rows", "10", "--out", (tmp / "no_dir" / "x.csv").string()});
  CHECK(unwritable.exit_code == 2);
}

TEST_CASE("train/predict/evaluate/recommend pipeline") {
  TempDir tmp;
  const std::string data = (tmp / "data.csv").string();
  REQUIRE(run_cli({"gen-data", "--rows", "400", "--seed", "5", "--out", data})
              .exit_code == 0);

  const std::string lr = (tmp / "lr.json").string();
  const std::string mnb = (tmp / "mnb.json").string();
  const std::string rf = (tmp / "rf.json").string();

  SUBCASE("train prints the report and writes the model") {
    RunResult r = run_cli({"train", "--data", data, "--model", "lr", "--out", lr});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("Confusion matrix:") == 0);
    CHECK(r.out.find("Accuracy:") != std::string::npos);
    CHECK(!read_file(lr).empty());

    // The input file is never mutated.
    const std::string before = read_file(data);
    run_cli({"train", "--data", data, "--model", "lr", "--out", lr});
    CHECK(read_file(data) == before);
  }

  SUBCASE("retraining reproduces the model file byte for byte") {
    const std::string again = (tmp / "lr2.json").string();
    REQUIRE(run_cli({"train", "--data", data, "--model", "lr", "--out", lr})
                .exit_code == 0);
    REQUIRE(run_cli({"train", "--data", data, "--model", "lr", "--out", again})
                .exit_code == 0);
    CHECK(read_file(lr) == read_file(again));
  }

  SUBCASE("predict prints one label line per model") {
    REQUIRE(run_cli({"train", "--data", data, "--model", "lr", "--out", lr})
                .exit_code == 0);
    REQUIRE(run_cli({"train", "--data", data, "--model", "mnb", "--out", mnb,
                     "--output", "json"})
                .exit_code == 0);
    REQUIRE(run_cli({"train", "--data", data, "--model", "rf", "--out", rf,
                     "--trees", "20"})
                .exit_code == 0);

    RunResult one = run_cli({"predict", "--model-file", lr, "--text",
                             "It is an amazing insurance product"});
    REQUIRE(one.exit_code == 0);
    CHECK(one.out == "1\n");

    RunResult all = run_cli({"predict", "--all", "--model-file", mnb, "--model-file",
                             rf, "--model-file", lr, "--text",
                             "It is an amazing insurance product"});
    REQUIRE(all.exit_code == 0);
    CHECK(all.out == "1\n1\n1\n");

    RunResult all_json =
        run_cli({"predict", "--all", "--model-file", mnb, "--model-file", rf,
                 "--model-file", lr, "--text", "It is an amazing insurance product",
                 "--output", "json"});
    REQUIRE(all_json.exit_code == 0);
    const json doc = json::parse(all_json.out);
    REQUIRE(doc.at("predictions").size() == 3);
    // Paper order: LR first, then RF, then MNB, independent of flag order.
    CHECK(doc["predictions"][0]["model_kind"] == "lr");
    CHECK(doc["predictions"][1]["model_kind"] == "rf");
    CHECK(doc["predictions"][2]["model_kind"] == "mnb");
  }

  SUBCASE("evaluate agrees between text and json modes") {
    REQUIRE(run_cli({"train", "--data", data, "--model", "mnb", "--out", mnb})
                .exit_code == 0);
    RunResult text = run_cli({"evaluate", "--data", data, "--model-file", mnb});
    REQUIRE(text.exit_code == 0);
    RunResult as_json = run_cli(
        {"evaluate", "--data", data, "--model-file", mnb, "--output", "json"});
    REQUIRE(as_json.exit_code == 0);

    const json doc = json::parse(as_json.out);
    const auto cell = [&](const char* key) {
      return std::to_string(doc["confusion"][key].get<long long>());
    };
    CHECK(text.out.find(cell("tp")) != std::string::npos);
    CHECK(text.out.find(cell("tn")) != std::string::npos);
    CHECK(doc["evaluated"] == 400);

    RunResult held_out = run_cli({"evaluate", "--data", data, "--model-file", mnb,
                                  "--test-fraction", "0.3", "--output", "json"});
    REQUIRE(held_out.exit_code == 0);
    CHECK(json::parse(held_out.out)["evaluated"] == 120);
  }

  SUBCASE("recommend prints the ranking and match line") {
    REQUIRE(run_cli({"train", "--data", data, "--model", "lr", "--out", lr})
                .exit_code == 0);
    RunResult r = run_cli({"recommend", "--data", data, "--model-file", lr, "--age",
                           "42", "--gender", "M", "--income", "2", "--locality",
                           "City", "--feedback", "It is a great product"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("matched: ") != std::string::npos);
    CHECK(r.out.find(" of 400") != std::string::npos);

    RunResult j = run_cli({"recommend", "--data", data, "--model-file", lr, "--age",
                           "42", "--gender", "M", "--income", "2", "--locality",
                           "City", "--feedback", "It is a great product", "--output",
                           "json"});
    REQUIRE(j.exit_code == 0);
    const json doc = json::parse(j.out);
    CHECK(doc["criteria"]["sentiment"] == 1);
    CHECK(doc["criteria"]["age_range_lower"] == 40);
    CHECK(doc["criteria"]["age_range_upper"] == 45);
    CHECK(doc["total"] == 400);
    // Identical values to a repeated text run.
    RunResult r2 = run_cli({"recommend", "--data", data, "--model-file", lr, "--age",
                            "42", "--gender", "M", "--income", "2", "--locality",
                            "City", "--feedback", "It is a great product"});
    CHECK(r2.out.find("matched: " + std::to_string(doc["matched_count"].get<long long>())) !=
          std::string::npos);
  }
}

TEST_CASE("usage errors exit with code 1 and an error line") {
  TempDir tmp;
  const std::string data = (tmp / "d.csv").string();
  REQUIRE(run_cli({"gen-data", "--rows", "50", "--seed", "1", "--out", data})
              .exit_code == 0);
  const std::string model = (tmp / "m.json").string();
  REQUIRE(run_cli({"train", "--data", data, "--model", "mnb", "--out", model})
              .exit_code == 0);

  RunResult bad_kind =
      run_cli({"train", "--data", data, "--model", "xyz", "--out", model});
  CHECK(bad_kind.exit_code == 1);
  CHECK(bad_kind.err.find("lr, mnb, rf") != std::string::npos);

  RunResult empty_text = run_cli({"predict", "--model-file", model, "--text", ""});
  CHECK(empty_text.exit_code == 1);

  RunResult bad_gender = run_cli({"recommend", "--data", data, "--model-file", model,
                                  "--age", "42", "--gender", "X", "--income", "2",
                                  "--locality", "City", "--feedback", "fine"});
  CHECK(bad_gender.exit_code == 1);
  CHECK(bad_gender.err.find("--gender") != std::string::npos);

  CHECK(run_cli({"no-such-command"}).exit_code == 1);
  CHECK(run_cli({}).exit_code == 1);
}

TEST_CASE("data errors exit with code 2") {
  TempDir tmp;
  RunResult missing = run_cli({"train", "--data", (tmp / "absent.csv").string(),
                               "--model", "lr", "--out", (tmp / "m.json").string()});
  CHECK(missing.exit_code == 2);

  const std::string broken = (tmp / "broken.csv").string();
  write_file(broken, "not,a,customer,table\n1,2,3,4\n");
  RunResult schema = run_cli(
      {"train", "--data", broken, "--model", "lr", "--out", (tmp / "m.json").string()});
  CHECK(schema.exit_code == 2);
  CHECK(schema.err.find("schema") != std::string::npos);

  const std::string corrupt = (tmp / "corrupt.json").string();
  write_file(corrupt, "{\"format_version\": 1}");
  RunResult model_err = run_cli({"predict", "--model-file", corrupt, "--text", "hi"});
  CHECK(model_err.exit_code == 2);
  CHECK(model_err.err.find("model file") != std::string::npos);

  // A training split containing a single class cannot be learned from.
  const std::string one_class = (tmp / "one_class.csv").string();
  std::string csv =
      "id,Age,Age_range_lower,Age_range_upper,Gender,Income Category,Locality,"
      "Other Product purchased by this customer,sentiment,review\n";
  for (int i = 0; i < 20; ++i) {
    csv += "r" + std::to_string(i) + "_9,30,30,35,M,1,City,2,1,great product\n";
  }
  write_file(one_class, csv);
  RunResult single = run_cli({"train", "--data", one_class, "--model", "lr", "--out",
                              (tmp / "m.json").string()});
  CHECK(single.exit_code == 2);
  CHECK(single.err.find("both classes") != std::string::npos);
}

TEST_CASE("numeric blow-ups exit with code 3") {
  TempDir tmp;
  const std::string data = (tmp / "d.csv").string();
  REQUIRE(run_cli({"gen-data", "--rows", "60", "--seed", "2", "--out", data})
              .exit_code == 0);
  RunResult r = run_cli({"train", "--data", data, "--model", "lr", "--out",
                         (tmp / "m.json").string(), "--learning-rate", "1e308"});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("epoch") != std::string::npos);
}

TEST_CASE("blank lines in a CSV are tolerated") {
  TempDir tmp;
  const std::string data = (tmp / "d.csv").string();
  REQUIRE(run_cli({"gen-data", "--rows", "30", "--seed", "4", "--out", data})
              .exit_code == 0);
  write_file(data, read_file(data) + "\n");
  RunResult r = run_cli({"evaluate", "--data", data, "--model-file",
                         (tmp / "nope.json").string()});
  CHECK(r.exit_code == 2);  // fails on the model, not the trailing blank line
  CHECK(r.err.find("model") != std::string::npos);
}

TEST_CASE("help prints to stdout and exits zero") {
  RunResult help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("gen-data") != std::string::npos);
  CHECK(help.out.find("recommend") != std::string::npos);
}
