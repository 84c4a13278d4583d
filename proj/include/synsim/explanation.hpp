// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synsim/detail/text.hpp"
#include "synsim/errors.hpp"

namespace synsim {

/// A single word of an explanation. The original surface form is kept for
/// display; all comparisons use the case-folded form.
class Feature {
 public:
  explicit Feature(std::string surface) {
    const auto trimmed = detail::trim(surface);
    if (trimmed.empty()) throw Error("feature token is empty");
    surface_.assign(trimmed);
    folded_ = detail::fold_case(surface_);
  }

  const std::string& surface() const { return surface_; }
  const std::string& folded() const { return folded_; }

  friend bool operator==(const Feature& a, const Feature& b) {
    return a.folded_ == b.folded_;
  }
  friend bool operator<(const Feature& a, const Feature& b) {
    return a.folded_ < b.folded_;
  }

 private:
  std::string surface_;
  std::string folded_;
};

/// An ordered list of unique features; the feature at position i has rank i
/// (1-based). This is the unit every similarity measure compares.
class RankedExplanation {
 public:
  explicit RankedExplanation(std::vector<Feature> features)
      : features_(std::move(features)) {
    if (features_.empty()) throw EmptyExplanation("explanation has no features");
    ranks_.reserve(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) {
      const auto [it, inserted] = ranks_.emplace(features_[i].folded(), i + 1);
      if (!inserted) {
        throw DuplicateFeature("duplicate feature '" + features_[i].folded() + "'");
      }
    }
  }

  std::size_t size() const { return features_.size(); }
  const std::vector<Feature>& features() const { return features_; }

  /// 1-based access, matching the rank convention.
  const Feature& at_rank(std::size_t rank) const { return features_[rank - 1]; }

  bool contains(const Feature& f) const { return ranks_.count(f.folded()) != 0; }
  bool contains_token(const std::string& folded) const { return ranks_.count(folded) != 0; }

  /// 1-based rank of a feature, or nullopt when absent.
  std::optional<std::size_t> rank_of(const Feature& f) const {
    const auto it = ranks_.find(f.folded());
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
  }

  /// Surface tokens in rank order (the serialized form).
  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    out.reserve(features_.size());
    for (const auto& f : features_) out.push_back(f.surface());
    return out;
  }

 private:
  std::vector<Feature> features_;
  std::unordered_map<std::string, std::size_t> ranks_;
};

/// Builds an explanation from raw token strings in rank order. Blank lines
/// are skipped; duplicate case-folded tokens are rejected.
inline RankedExplanation parse_explanation(std::span<const std::string> lines) {
  std::vector<Feature> features;
  features.reserve(lines.size());
  for (const auto& line : lines) {
    if (detail::trim(line).empty()) continue;
    features.emplace_back(line);
  }
  if (features.empty()) throw EmptyExplanation("explanation has no features");
  return RankedExplanation(std::move(features));
}

inline RankedExplanation parse_explanation(const std::vector<std::string>& lines) {
  return parse_explanation(std::span<const std::string>(lines));
}

/// One single-word replacement made by the perturbation process.
struct SubstitutionEvent {
  SubstitutionEvent(std::size_t iteration, Feature original, Feature replacement)
      : iteration(iteration),
        original(std::move(original)),
        replacement(std::move(replacement)) {
    if (this->iteration == 0) throw Error("substitution iteration must be positive");
    if (this->original == this->replacement) {
      throw Error("substitution replaces '" + this->original.folded() + "' with itself");
    }
  }

  std::size_t iteration;
  Feature original;
  Feature replacement;
};

/// One attack instance: the texts, both explanations, the substitution log,
/// and the measure/threshold that guided the attack.
struct AdversarialRecord {
  std::string id;
  std::string original_text;
  std::string perturbed_text;
  RankedExplanation original_explanation;
  RankedExplanation perturbed_explanation;
  std::vector<SubstitutionEvent> substitutions;
  std::string guiding_measure;
  double threshold = 0.5;
  std::optional<double> final_similarity;

  /// Throws on violated invariants (iteration order, threshold range).
  void validate() const {
    if (id.empty()) throw Error("record id is empty");
    if (threshold < 0.0 || threshold > 1.0) {
      throw Error("record '" + id + "': threshold outside [0,1]");
    }
    for (std::size_t i = 1; i < substitutions.size(); ++i) {
      if (substitutions[i].iteration <= substitutions[i - 1].iteration) {
        throw Error("record '" + id + "': substitution iterations not strictly increasing");
      }
    }
  }
};

}  // namespace synsim
