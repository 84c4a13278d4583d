// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "synsim/detail/parallel.hpp"
#include "synsim/detail/rng.hpp"
#include "synsim/detail/text.hpp"
#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"
#include "synsim/measures.hpp"
#include "synsim/synonymity.hpp"

// Deterministic synthetic attack generation. A table-driven explainer plays
// the part of the XAI method; a greedy loop replaces one word per iteration
// with the lexicon synonym that minimizes the guiding standard measure,
// until the similarity falls below the threshold, candidates run out, or
// the iteration budget is spent. Everything is a pure function of the
// seeds, so corpora are reproducible byte for byte.

namespace synsim {

/// Ranks document tokens by a fixed weight table; tokens missing from the
/// table get a pseudo-weight hashed from (seed, token). Ties break
/// lexicographically ascending.
struct ToyExplainer {
  std::map<std::string, double> weights;  // folded token -> importance in [0,1]
  std::uint64_t seed = 0;
  std::size_t k = 5;

  double importance(const std::string& folded_token) const {
    const auto it = weights.find(folded_token);
    if (it != weights.end()) return it->second;
    const std::uint64_t h = detail::splitmix64(seed ^ detail::fnv1a64(folded_token));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }
};

/// Top-k unique document tokens by descending importance (full document
/// length when fewer unique tokens exist).
inline RankedExplanation explain(std::span<const std::string> document,
                                 const ToyExplainer& explainer) {
  if (document.empty()) throw EmptyExplanation("document has no tokens");
  std::vector<std::string> unique_tokens;
  std::unordered_set<std::string> seen;
  for (const auto& token : document) {
    const std::string folded = detail::fold_case(std::string(detail::trim(token)));
    if (folded.empty()) continue;
    if (seen.insert(folded).second) unique_tokens.push_back(folded);
  }
  if (unique_tokens.empty()) throw EmptyExplanation("document has no tokens");
  std::stable_sort(unique_tokens.begin(), unique_tokens.end(),
                   [&](const std::string& x, const std::string& y) {
                     const double wx = explainer.importance(x);
                     const double wy = explainer.importance(y);
                     if (wx != wy) return wx > wy;
                     return x < y;
                   });
  const std::size_t k = std::min(explainer.k, unique_tokens.size());
  std::vector<Feature> features;
  features.reserve(k);
  for (std::size_t i = 0; i < k; ++i) features.emplace_back(unique_tokens[i]);
  return RankedExplanation(std::move(features));
}

struct SimulationConfig {
  std::uint64_t seed = 0;
  std::size_t max_iterations = 10;
  MeasureId guiding_measure{MeasureKind::jaccard, 0.0};
  double tau = 0.5;
  SynonymLexicon lexicon;
  std::size_t k = 5;
  std::size_t min_document_length = 8;
  std::size_t max_document_length = 14;
  MeasureConfig measure_config;
};

namespace detail {

inline std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace detail

/// Runs the greedy single-word substitution attack on one document.
/// Candidates are every (document headword, lexicon synonym) pair whose
/// replacement is not already a document token; the applied candidate is
/// the one minimizing the guiding standard measure, ties broken by earliest
/// document position, then lexicographic replacement.
inline AdversarialRecord run_attack(std::span<const std::string> document,
                                    const ToyExplainer& explainer,
                                    const SimulationConfig& config,
                                    std::string record_id = "attack-0") {
  std::vector<std::string> doc;
  doc.reserve(document.size());
  for (const auto& token : document) {
    const std::string folded = detail::fold_case(std::string(detail::trim(token)));
    if (!folded.empty()) doc.push_back(folded);
  }
  if (doc.empty()) throw EmptyExplanation("document has no tokens");

  bool any_headword = false;
  for (const auto& token : doc) {
    if (config.lexicon.has_headword(token)) {
      any_headword = true;
      break;
    }
  }
  if (!any_headword) {
    throw NoCandidates("no token of document '" + record_id + "' appears in the lexicon");
  }

  const RankedExplanation original = explain(doc, explainer);
  RankedExplanation perturbed = original;
  std::vector<SubstitutionEvent> log;
  double current_sim = 1.0;

  for (std::size_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
    std::unordered_set<std::string> doc_tokens(doc.begin(), doc.end());

    struct Candidate {
      double sim;
      std::size_t position;
      std::string replacement;
      std::string target;
      RankedExplanation explanation;
    };
    std::optional<Candidate> best;

    std::unordered_set<std::string> tried;
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
      const std::string& token = doc[pos];
      if (!tried.insert(token).second) continue;  // first occurrence decides position
      const auto* synonyms = config.lexicon.synonyms(token);
      if (synonyms == nullptr) continue;
      for (const auto& replacement : *synonyms) {
        if (doc_tokens.count(replacement) != 0) continue;
        std::vector<std::string> candidate_doc = doc;
        for (auto& t : candidate_doc) {
          if (t == token) t = replacement;
        }
        RankedExplanation candidate_explanation = explain(candidate_doc, explainer);
        const double sim = evaluate_standard(config.guiding_measure, original,
                                             candidate_explanation, config.measure_config)
                               .similarity;
        if (!best.has_value() || sim < best->sim ||
            (sim == best->sim &&
             (pos < best->position ||
              (pos == best->position && replacement < best->replacement)))) {
          best = Candidate{sim, pos, replacement, token, std::move(candidate_explanation)};
        }
      }
    }
    if (!best.has_value()) break;  // candidates exhausted

    for (auto& t : doc) {
      if (t == best->target) t = best->replacement;
    }
    log.emplace_back(iteration, Feature(best->target), Feature(best->replacement));
    perturbed = best->explanation;
    current_sim = best->sim;
    if (success(current_sim, config.tau)) break;
  }

  AdversarialRecord record{std::move(record_id),
                           detail::join_tokens(document),
                           detail::join_tokens(doc),
                           original,
                           std::move(perturbed),
                           std::move(log),
                           config.guiding_measure.str(),
                           config.tau,
                           current_sim};
  record.validate();
  return record;
}

/// Generates n attack records over random documents sampled from the
/// vocabulary. Per-record seeds derive from (config.seed, index), so the
/// corpus is identical for any job count. Documents that raise NoCandidates
/// are resampled a bounded number of times before the error propagates.
inline std::vector<AdversarialRecord> generate_corpus(std::size_t n,
                                                      std::span<const std::string> vocabulary,
                                                      const SimulationConfig& config,
                                                      unsigned jobs = 1) {
  if (n == 0) throw Error("corpus size must be positive");
  std::vector<std::string> vocab;
  vocab.reserve(vocabulary.size());
  {
    std::unordered_set<std::string> seen;
    for (const auto& token : vocabulary) {
      const std::string folded = detail::fold_case(std::string(detail::trim(token)));
      if (!folded.empty() && seen.insert(folded).second) vocab.push_back(folded);
    }
  }
  std::sort(vocab.begin(), vocab.end());
  if (vocab.empty()) throw Error("vocabulary is empty");

  std::vector<std::string> usable_headwords;
  for (const auto& token : vocab) {
    const auto* synonyms = config.lexicon.synonyms(token);
    if (synonyms != nullptr && !synonyms->empty()) usable_headwords.push_back(token);
  }

  ToyExplainer explainer;
  explainer.seed = config.seed;
  explainer.k = config.k;

  std::vector<std::optional<AdversarialRecord>> records(n);
  detail::parallel_for(n, jobs, [&](std::size_t index) {
    constexpr std::size_t max_attempts = 16;
    for (std::size_t attempt = 0;; ++attempt) {
      detail::Rng rng(detail::splitmix64(config.seed ^ detail::splitmix64(index * 2654435761ULL + attempt)));
      const std::size_t lo = std::min(config.min_document_length, vocab.size());
      const std::size_t hi = std::min(config.max_document_length, vocab.size());
      const std::size_t length = std::max<std::size_t>(
          1, rng.between(std::min(lo, hi), std::max(lo, hi)));

      // Sample distinct tokens, guaranteeing one usable headword when any exists.
      std::vector<std::string> pool = vocab;
      rng.shuffle(pool);
      std::vector<std::string> doc(pool.begin(), pool.begin() + length);
      if (!usable_headwords.empty()) {
        bool has_usable = false;
        for (const auto& t : doc) {
          if (config.lexicon.synonyms(t) != nullptr && !config.lexicon.synonyms(t)->empty()) {
            has_usable = true;
            break;
          }
        }
        if (!has_usable) {
          doc[rng.below(doc.size())] = usable_headwords[rng.below(usable_headwords.size())];
        }
      }
      rng.shuffle(doc);

      char id[32];
      std::snprintf(id, sizeof id, "sim-%04zu", index);
      try {
        records[index] = run_attack(doc, explainer, config, id);
        return;
      } catch (const NoCandidates&) {
        if (attempt + 1 >= max_attempts) throw;
      }
    }
  });

  std::vector<AdversarialRecord> out;
  out.reserve(n);
  for (auto& r : records) out.push_back(std::move(*r));
  return out;
}

}  // namespace synsim
