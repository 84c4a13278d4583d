// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "synsim/harness.hpp"
#include "synsim/io.hpp"
#include "synsim/simulate.hpp"

using namespace synsim;

namespace {

SynonymLexicon small_lexicon() {
  SynonymLexicon lexicon;
  lexicon.add("quick", "fast");
  lexicon.add("quick", "speedy");
  lexicon.add("large", "big");
  lexicon.add("large", "huge");
  lexicon.add("happy", "glad");
  lexicon.add("cold", "chilly");
  lexicon.add("fast", "rapid");  // allows quick->fast->rapid chains
  lexicon.add("dark", "dim");
  lexicon.add("warm", "toasty");
  lexicon.add("loud", "noisy");
  return lexicon;
}

std::vector<std::string> small_vocabulary() {
  return {"quick", "large", "small", "happy", "cold", "dark", "warm",
          "loud",  "stone", "river", "cloud", "metal", "paper", "glass"};
}

std::string serialize(const std::vector<AdversarialRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("simulate");

TEST_CASE("explain ranks by weight, then lexicographically") {
  ToyExplainer explainer;
  explainer.weights = {{"a", 0.9}, {"b", 0.5}, {"c", 0.1}};
  explainer.k = 2;
  const std::vector<std::string> doc = {"a", "b", "a", "c"};
  const auto e = explain(doc, explainer);
  REQUIRE(e.size() == 2);
  CHECK(e.at_rank(1).folded() == "a");
  CHECK(e.at_rank(2).folded() == "b");
}

TEST_CASE("explain breaks weight ties lexicographically") {
  ToyExplainer explainer;
  explainer.weights = {{"x", 0.5}, {"y", 0.5}};
  explainer.k = 2;
  const std::vector<std::string> doc = {"y", "x"};
  const auto e = explain(doc, explainer);
  CHECK(e.at_rank(1).folded() == "x");
  CHECK(e.at_rank(2).folded() == "y");
}

TEST_CASE("explain truncates to the document when it is shorter than k") {
  ToyExplainer explainer;
  explainer.k = 10;
  const std::vector<std::string> doc = {"p", "q"};
  CHECK(explain(doc, explainer).size() == 2);
}

TEST_CASE("explain is deterministic") {
  ToyExplainer explainer;
  explainer.seed = 99;
  explainer.k = 4;
  const std::vector<std::string> doc = {"m", "n", "o", "p", "q", "r"};
  const auto e1 = explain(doc, explainer);
  const auto e2 = explain(doc, explainer);
  for (std::size_t r = 1; r <= e1.size(); ++r) CHECK(e1.at_rank(r) == e2.at_rank(r));
}

TEST_CASE("a permissive threshold succeeds after one substitution") {
  SimulationConfig config;
  config.tau = 1.0;
  config.k = 3;
  config.max_iterations = 5;
  config.lexicon.add("quick", "fast");
  ToyExplainer explainer;
  explainer.weights = {{"quick", 0.9}, {"stone", 0.8}, {"river", 0.7}};
  explainer.k = 3;

  const std::vector<std::string> doc = {"quick", "stone", "river"};
  const auto record = run_attack(doc, explainer, config, "one-shot");
  REQUIRE(record.substitutions.size() == 1);
  CHECK(record.substitutions.front().original.folded() == "quick");
  CHECK(record.substitutions.front().replacement.folded() == "fast");
  REQUIRE(record.final_similarity.has_value());
  CHECK(*record.final_similarity < 1.0);
  CHECK(record.perturbed_text == "fast stone river");
}

TEST_CASE("an unattainable threshold always terminates as failure") {
  SimulationConfig config;
  config.tau = 0.0;
  config.k = 3;
  config.max_iterations = 4;
  config.lexicon = small_lexicon();
  ToyExplainer explainer;
  explainer.k = 3;

  const std::vector<std::string> doc = {"quick", "large", "happy", "stone"};
  const auto record = run_attack(doc, explainer, config, "hopeless");
  REQUIRE(record.final_similarity.has_value());
  CHECK_FALSE(success(*record.final_similarity, 0.0));
}

TEST_CASE("documents disjoint from the lexicon raise NoCandidates") {
  SimulationConfig config;
  config.lexicon = small_lexicon();
  ToyExplainer explainer;
  const std::vector<std::string> doc = {"stone", "river", "cloud"};
  CHECK_THROWS_AS(run_attack(doc, explainer, config, "dry"), NoCandidates);
}

TEST_CASE("attacks are deterministic record for record") {
  SimulationConfig config;
  config.seed = 31;
  config.tau = 0.4;
  config.k = 4;
  config.lexicon = small_lexicon();
  ToyExplainer explainer;
  explainer.seed = config.seed;
  explainer.k = config.k;

  const std::vector<std::string> doc = {"quick", "large", "happy", "cold", "stone", "river"};
  const auto r1 = run_attack(doc, explainer, config, "det");
  const auto r2 = run_attack(doc, explainer, config, "det");
  CHECK(record_to_json(r1).dump() == record_to_json(r2).dump());
}

TEST_CASE("substitution log composes consistently with the final document") {
  SimulationConfig config;
  config.seed = 77;
  config.tau = 0.2;
  config.k = 4;
  config.max_iterations = 8;
  config.lexicon = small_lexicon();
  ToyExplainer explainer;
  explainer.seed = config.seed;
  explainer.k = config.k;

  const std::vector<std::string> doc = {"quick", "large", "happy", "cold",
                                        "stone", "river", "warm"};
  const auto record = run_attack(doc, explainer, config, "chain");

  // Replaying the composed substitutions over the original text must yield
  // the perturbed text.
  const auto chains = compose_substitutions(record.substitutions);
  std::istringstream in(record.original_text);
  std::string token;
  std::vector<std::string> replayed;
  while (in >> token) {
    const auto it = chains.find(token);
    replayed.push_back(it == chains.end() ? token : it->second.folded());
  }
  std::string joined;
  for (std::size_t i = 0; i < replayed.size(); ++i) {
    if (i != 0) joined.push_back(' ');
    joined += replayed[i];
  }
  CHECK(joined == record.perturbed_text);
}

TEST_CASE("generated corpora are reproducible and seed-sensitive") {
  SimulationConfig config;
  config.seed = 7;
  config.tau = 0.5;
  config.k = 4;
  config.max_iterations = 6;
  config.lexicon = small_lexicon();
  config.min_document_length = 6;
  config.max_document_length = 10;

  const auto vocab = small_vocabulary();
  const auto c1 = generate_corpus(50, vocab, config);
  const auto c2 = generate_corpus(50, vocab, config);
  REQUIRE(c1.size() == 50);
  CHECK(serialize(c1) == serialize(c2));

  config.seed = 8;
  const auto c3 = generate_corpus(50, vocab, config);
  CHECK(serialize(c1) != serialize(c3));

  const auto single = generate_corpus(1, vocab, config);
  CHECK(single.size() == 1);
}

TEST_CASE("corpora are identical across job counts") {
  SimulationConfig config;
  config.seed = 19;
  config.tau = 0.5;
  config.k = 4;
  config.lexicon = small_lexicon();
  config.min_document_length = 6;
  config.max_document_length = 9;
  const auto vocab = small_vocabulary();
  const auto serial = generate_corpus(32, vocab, config, 1);
  const auto parallel = generate_corpus(32, vocab, config, 8);
  CHECK(serialize(serial) == serialize(parallel));
}

TEST_CASE("every generated record round-trips and closes the loop with the harness") {
  SimulationConfig config;
  config.seed = 3;
  config.tau = 0.5;
  config.k = 4;
  config.max_iterations = 6;
  config.lexicon = small_lexicon();
  config.min_document_length = 6;
  config.max_document_length = 10;

  const auto corpus = generate_corpus(40, small_vocabulary(), config);
  const auto guiding = MeasureId::parse(corpus.front().guiding_measure);
  for (const auto& record : corpus) {
    CHECK_NOTHROW(record.validate());

    // io round trip, field-level.
    const auto line = record_to_json(record).dump();
    const auto back = record_from_json(nlohmann::json::parse(line));
    CHECK(record_to_json(back).dump() == line);

    // Recomputing the guiding measure must agree with the recorded outcome.
    const auto [base, weighted] =
        evaluate_record(record, guiding, SynonymityProvider::exact());
    (void)weighted;
    REQUIRE(record.final_similarity.has_value());
    CHECK(base == doctest::Approx(*record.final_similarity).epsilon(1e-12));
  }
}

TEST_CASE("an empty-synonym lexicon exhausts every document") {
  SimulationConfig config;
  config.lexicon.add_headword("stone");  // headword with no synonyms
  ToyExplainer explainer;
  const std::vector<std::string> doc = {"stone", "river"};
  // The headword is present, so the attack starts, finds no candidates, and
  // terminates as a failure with an empty log.
  const auto record = run_attack(doc, explainer, config, "empty");
  CHECK(record.substitutions.empty());
  CHECK(*record.final_similarity == doctest::Approx(1.0));
}

TEST_SUITE_END();
