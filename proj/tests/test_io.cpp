// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "synsim/io.hpp"

using namespace synsim;

namespace {

const std::filesystem::path kData = SYNSIM_TESTDATA_DIR;

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::filesystem::path write_temp(const std::string& name, const std::string& contents) {
  const auto path = temp_path(name);
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EvaluationReport sample_report() {
  EvaluationReport report;
  ReportRow row;
  row.dataset = "demo";
  row.measure = "jaccard";
  row.provider = "exact";
  row.tau = 0.4;
  row.base_rate = 0.5;
  row.syn_rate = 0.25;
  row.base_avg_sim = 0.1234;
  row.syn_avg_sim = std::nullopt;
  row.n = 4;
  row.skipped = 1;
  row.n_success_base = 2;
  row.n_success_syn = 1;
  report.rows.push_back(row);
  return report;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("the fixture record parses to the expected explanations") {
  const auto records = read_records(kData / "symptoms.jsonl");
  REQUIRE(records.size() == 1);
  const auto& r = records.front();
  CHECK(r.id == "symptoms-1");
  CHECK(r.original_explanation.size() == 7);
  CHECK(r.original_explanation.at_rank(1).folded() == "rash");
  CHECK(r.perturbed_explanation.at_rank(3).folded() == "alarmed");
  CHECK(r.substitutions.size() == 3);
  CHECK(r.guiding_measure == "jaccard");
  CHECK(r.threshold == 0.5);
  CHECK(r.final_similarity == 0.4);
}

TEST_CASE("unknown fields are ignored") {
  const auto path = write_temp(
      "synsim_extra.jsonl",
      R"({"id":"x","original_explanation":["a"],"perturbed_explanation":["a"],)"
      R"("guiding_measure":"jaccard","threshold":0.4,"mystery":42,"notes":"hi"})"
      "\n");
  const auto records = read_records(path);
  REQUIRE(records.size() == 1);
  CHECK(records.front().id == "x");
  CHECK_FALSE(records.front().final_similarity.has_value());
}

TEST_CASE("malformed lines carry their line number") {
  const auto path = write_temp(
      "synsim_bad.jsonl",
      R"({"id":"ok","original_explanation":["a"],"perturbed_explanation":["a"]})"
      "\n"
      "not json at all\n");
  try {
    read_records(path);
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("schema violations are malformed lines too") {
  SUBCASE("missing explanation") {
    const auto path = write_temp("synsim_noexp.jsonl", R"({"id":"x"})" "\n");
    CHECK_THROWS_AS(read_records(path), MalformedLine);
  }
  SUBCASE("duplicate features inside an explanation") {
    const auto path = write_temp(
        "synsim_dup.jsonl",
        R"({"id":"x","original_explanation":["a","A"],"perturbed_explanation":["a"]})"
        "\n");
    CHECK_THROWS_AS(read_records(path), MalformedLine);
  }
  SUBCASE("non-increasing substitution iterations") {
    const auto path = write_temp(
        "synsim_iter.jsonl",
        R"({"id":"x","original_explanation":["a"],"perturbed_explanation":["b"],)"
        R"("substitutions":[{"iteration":2,"original":"a","replacement":"b"},)"
        R"({"iteration":2,"original":"c","replacement":"d"}]})"
        "\n");
    CHECK_THROWS_AS(read_records(path), MalformedLine);
  }
}

TEST_CASE("duplicate record ids are rejected") {
  const std::string one =
      R"({"id":"dup","original_explanation":["a"],"perturbed_explanation":["a"]})";
  const auto path = write_temp("synsim_dupid.jsonl", one + "\n" + one + "\n");
  CHECK_THROWS_AS(read_records(path), DuplicateRecordId);
}

TEST_CASE("an empty file yields an empty corpus") {
  const auto path = write_temp("synsim_empty.jsonl", "");
  CHECK(read_records(path).empty());
}

TEST_CASE("records with no substitutions and equal explanations are valid") {
  const auto path = write_temp(
      "synsim_same.jsonl",
      R"({"id":"same","original_explanation":["a","b"],"perturbed_explanation":["a","b"],)"
      R"("substitutions":[],"guiding_measure":"kendall","threshold":0.3})"
      "\n");
  const auto records = read_records(path);
  REQUIRE(records.size() == 1);
  CHECK(records.front().substitutions.empty());
}

TEST_CASE("record write/read round trip over random corpora") {
  std::mt19937_64 rng(99);
  std::vector<AdversarialRecord> corpus;
  for (int i = 0; i < 30; ++i) {
    auto t = testgen::random_triple(rng);
    AdversarialRecord record{"r" + std::to_string(i),
                             "orig text " + std::to_string(i),
                             "pert text " + std::to_string(i),
                             t.a,
                             t.b,
                             t.substitutions,
                             "rbo@0.7",
                             0.4,
                             std::nullopt};
    if (i % 2 == 0) record.final_similarity = 0.125 * (i % 8);
    corpus.push_back(std::move(record));
  }
  const auto path = temp_path("synsim_roundtrip.jsonl");
  write_records(corpus, path);
  const auto back = read_records(path);
  REQUIRE(back.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(record_to_json(back[i]).dump() == record_to_json(corpus[i]).dump());
  }

  // Writing the same corpus twice produces identical bytes.
  const auto path2 = temp_path("synsim_roundtrip2.jsonl");
  write_records(corpus, path2);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("csv report rendering") {
  std::ostringstream out;
  write_report_csv(sample_report(), out);
  CHECK(out.str() ==
        "dataset,measure,provider,tau,base_rate,syn_rate,base_avg_sim,syn_avg_sim,n,skipped\n"
        "demo,jaccard,exact,0.4,0.5000,0.2500,0.1234,-,4,1\n");
}

TEST_CASE("csv reports round trip field-for-field") {
  const auto report = sample_report();
  const auto path = temp_path("synsim_report.csv");
  write_report(report, path, ReportFormat::csv);
  const auto back = read_report_csv(path);
  REQUIRE(back.rows.size() == 1);
  const auto& row = back.rows.front();
  CHECK(row.dataset == "demo");
  CHECK(row.measure == "jaccard");
  CHECK(row.provider == "exact");
  CHECK(row.tau == 0.4);
  CHECK(row.base_rate == 0.5);
  CHECK(row.syn_rate == 0.25);
  CHECK(row.base_avg_sim == 0.1234);
  CHECK_FALSE(row.syn_avg_sim.has_value());
  CHECK(row.n == 4);
  CHECK(row.skipped == 1);

  // Deterministic: a second write is byte-identical.
  const auto path2 = temp_path("synsim_report2.csv");
  write_report(report, path2, ReportFormat::csv);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("json report mirror carries the full row") {
  std::ostringstream out;
  write_report_json(sample_report(), out);
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["syn_avg_sim"].is_null());
  CHECK(parsed[0]["base_avg_sim"] == 0.1234);
  CHECK(parsed[0]["n_success_base"] == 2);
  CHECK(parsed[0]["n_success_syn"] == 1);
}

TEST_SUITE_END();
