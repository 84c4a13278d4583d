// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"

namespace synsim {

/// Final replacement per substituted token, keyed by the case-folded
/// original. Tokens never substituted are absent.
using SubstitutionMap = std::map<std::string, Feature>;

/// Collapses a substitution log into origin -> final replacement. A chain
/// a->b at one iteration and b->c at a later one yields a->c with no entry
/// for b; a chain that returns to its origin (a->b, b->a) vanishes.
inline SubstitutionMap compose_substitutions(std::span<const SubstitutionEvent> events) {
  SubstitutionMap forward;                          // chain origin -> endpoint
  std::unordered_map<std::string, std::string> reverse;  // endpoint -> chain origin
  std::size_t last_iteration = 0;
  for (const auto& event : events) {
    if (event.iteration <= last_iteration) {
      throw Error("substitution events not ordered by iteration");
    }
    last_iteration = event.iteration;
    const std::string& from = event.original.folded();
    const std::string& to = event.replacement.folded();

    const auto chain = reverse.find(from);
    if (chain != reverse.end()) {
      // Extending an existing chain: `from` is a live endpoint.
      const std::string origin = chain->second;
      if (reverse.count(to) != 0) {
        throw ConflictingChain("replacement '" + to + "' already ends another chain");
      }
      reverse.erase(chain);
      if (origin == to) {
        forward.erase(origin);  // chain returned to its origin
      } else {
        forward.insert_or_assign(origin, event.replacement);
        reverse.emplace(to, origin);
      }
      continue;
    }
    if (forward.count(from) != 0) {
      throw ConflictingChain("token '" + from + "' was already substituted away");
    }
    if (reverse.count(to) != 0) {
      throw ConflictingChain("replacement '" + to + "' already ends another chain");
    }
    forward.emplace(from, event.replacement);
    reverse.emplace(to, from);
  }
  return forward;
}

/// One origin feature of A paired with its counterpart in B, or with nothing.
struct MappedPair {
  Feature origin;
  std::optional<Feature> target;

  bool is_identity() const { return target.has_value() && *target == origin; }
};

/// The pairing between the original explanation A and the perturbed
/// explanation B. Every feature of A appears exactly once as an origin;
/// every feature of B is a survivor target, a substitution target, or an
/// unmapped entrant.
class FeatureMapping {
 public:
  FeatureMapping(std::vector<MappedPair> pairs, std::vector<Feature> unmapped_targets)
      : pairs_(std::move(pairs)), unmapped_targets_(std::move(unmapped_targets)) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      by_origin_.emplace(pairs_[i].origin.folded(), i);
    }
  }

  const std::vector<MappedPair>& pairs() const { return pairs_; }
  const std::vector<Feature>& unmapped_targets() const { return unmapped_targets_; }

  /// The pair whose origin case-folds to `origin_folded`, if any.
  const MappedPair* find(const std::string& origin_folded) const {
    const auto it = by_origin_.find(origin_folded);
    return it == by_origin_.end() ? nullptr : &pairs_[it->second];
  }

  std::optional<Feature> target_of(const Feature& origin) const {
    const MappedPair* pair = find(origin.folded());
    if (pair == nullptr) return std::nullopt;
    return pair->target;
  }

 private:
  std::vector<MappedPair> pairs_;
  std::vector<Feature> unmapped_targets_;
  std::unordered_map<std::string, std::size_t> by_origin_;
};

/// Builds the mapping for (A, B) from the substitution log. For each a in A:
/// a survivor maps to itself, a substituted feature maps to its chain
/// endpoint when that endpoint is in B, and everything else maps to null.
inline FeatureMapping build_mapping(const RankedExplanation& a,
                                    const RankedExplanation& b,
                                    std::span<const SubstitutionEvent> substitutions) {
  const SubstitutionMap chains = compose_substitutions(substitutions);

  // Survivors claim their targets before any chain does, so a chain endpoint
  // colliding with a surviving identical token is always detected.
  std::unordered_set<std::string> used_targets;
  for (const auto& origin : a.features()) {
    if (b.contains(origin)) used_targets.insert(origin.folded());
  }

  std::vector<MappedPair> ordered;
  ordered.reserve(a.size());
  for (const auto& origin : a.features()) {
    if (b.contains(origin)) {
      ordered.push_back({origin, origin});
      continue;
    }
    const auto chain = chains.find(origin.folded());
    if (chain != chains.end() && b.contains(chain->second)) {
      const Feature& target = chain->second;
      if (!used_targets.insert(target.folded()).second) {
        throw AmbiguousTarget("target '" + target.folded() +
                              "' collides with an already-mapped feature");
      }
      ordered.push_back({origin, target});
      continue;
    }
    ordered.push_back({origin, std::nullopt});
  }

  std::vector<Feature> unmapped;
  for (const auto& f : b.features()) {
    if (used_targets.count(f.folded()) == 0) unmapped.push_back(f);
  }
  return FeatureMapping(std::move(ordered), std::move(unmapped));
}

inline FeatureMapping build_mapping(const RankedExplanation& a,
                                    const RankedExplanation& b,
                                    const std::vector<SubstitutionEvent>& substitutions) {
  return build_mapping(a, b, std::span<const SubstitutionEvent>(substitutions));
}

}  // namespace synsim
