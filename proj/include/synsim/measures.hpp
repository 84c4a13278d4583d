// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"
#include "synsim/mapping.hpp"
#include "synsim/synonymity.hpp"

// Similarity measures over ranked feature lists, each in standard form and
// in a synonymity-weighted form that consumes a FeatureMapping plus a
// SynonymityProvider. Distance-based measures (Kendall, footrule) are
// normalized onto [0,1] as 1 - distance/max_distance so that every measure
// shares one similarity scale.
//
// RBO follows Webber, Moffat and Zobel, "A similarity measure for
// indefinite rankings", ACM TOIS 2010; the extrapolated variant adds the
// p^k * X_k/k completion term and is the default.

namespace synsim {

enum class MeasureKind { jaccard, kendall, spearman, rbo };

/// Identifier of one measure column: `jaccard`, `kendall`, `spearman`, or
/// `rbo@P` with the RBO weighting parameter embedded.
struct MeasureId {
  MeasureKind kind = MeasureKind::jaccard;
  double rbo_p = 0.0;

  std::string str() const {
    switch (kind) {
      case MeasureKind::jaccard: return "jaccard";
      case MeasureKind::kendall: return "kendall";
      case MeasureKind::spearman: return "spearman";
      case MeasureKind::rbo: break;
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, rbo_p);
    return "rbo@" + std::string(buf, ptr);
  }

  static MeasureId parse(std::string_view text) {
    if (text == "jaccard") return {MeasureKind::jaccard, 0.0};
    if (text == "kendall") return {MeasureKind::kendall, 0.0};
    if (text == "spearman") return {MeasureKind::spearman, 0.0};
    if (text.rfind("rbo@", 0) == 0) {
      const std::string_view param = text.substr(4);
      double p = 0.0;
      const auto [ptr, ec] = std::from_chars(param.data(), param.data() + param.size(), p);
      if (ec == std::errc() && ptr == param.data() + param.size() && p > 0.0 && p < 1.0) {
        return {MeasureKind::rbo, p};
      }
    }
    throw Error("unknown measure '" + std::string(text) +
                "' (expected jaccard|kendall|spearman|rbo@P with 0<P<1)");
  }

  /// The usual report columns: jaccard, kendall, spearman, rbo@{0.5,0.7,0.9}.
  static std::vector<MeasureId> default_set() {
    return {{MeasureKind::jaccard, 0.0}, {MeasureKind::kendall, 0.0},
            {MeasureKind::spearman, 0.0}, {MeasureKind::rbo, 0.5},
            {MeasureKind::rbo, 0.7},     {MeasureKind::rbo, 0.9}};
  }

  friend bool operator==(const MeasureId& a, const MeasureId& b) {
    return a.kind == b.kind && (a.kind != MeasureKind::rbo || a.rbo_p == b.rbo_p);
  }
};

enum class JaccardDenominator { unadjusted, adjusted };

/// What a zero-synonymity mapped pair contributes to the weighted footrule:
/// the disjoint-element penalty (default; the measure then degenerates to
/// the standard footrule under the exact provider), or the cap |A|-1 (the
/// limit of |i-j|/Syn as Syn -> 0).
enum class ZeroSynRule { penalty, cap };

struct MeasureConfig {
  double footrule_penalty_scale = 0.5;  // penalty = scale * |A|
  JaccardDenominator jaccard_denominator = JaccardDenominator::unadjusted;
  bool rbo_extrapolated = true;
  ZeroSynRule footrule_zero_syn = ZeroSynRule::penalty;
};

struct SimilarityResult {
  std::string measure;
  std::optional<double> raw_distance;  // distance-based measures only
  double similarity = 0.0;
};

namespace detail {

inline std::size_t overlap_count(const RankedExplanation& a, const RankedExplanation& b) {
  std::size_t n = 0;
  for (const auto& f : a.features()) {
    if (b.contains(f)) ++n;
  }
  return n;
}

inline double clamp_unit(double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); }

// Shared RBO series: X[d-1] is the (possibly credit-augmented) overlap at
// depth d, for d = 1..k.
inline double rbo_series(const std::vector<double>& overlap_at_depth, double p,
                         bool extrapolated) {
  const std::size_t k = overlap_at_depth.size();
  double sum = 0.0;
  double weight = 1.0;  // p^(d-1)
  for (std::size_t d = 1; d <= k; ++d) {
    sum += weight * overlap_at_depth[d - 1] / static_cast<double>(d);
    weight *= p;
  }
  double rbo = (1.0 - p) * sum;
  if (extrapolated) {
    rbo += weight * overlap_at_depth[k - 1] / static_cast<double>(k);  // weight == p^k
  }
  return rbo;
}

// Plain prefix-overlap profile X_1..X_k with k = max(|A|, |B|); the shorter
// list's prefix stops growing at its full length.
inline std::vector<double> rbo_overlap_profile(const RankedExplanation& a,
                                               const RankedExplanation& b) {
  const std::size_t k = std::max(a.size(), b.size());
  std::vector<double> profile(k, 0.0);
  std::unordered_set<std::string> pending;  // seen in exactly one prefix
  double overlap = 0.0;
  for (std::size_t d = 1; d <= k; ++d) {
    const bool has_a = d <= a.size();
    const bool has_b = d <= b.size();
    if (has_a && has_b && a.at_rank(d) == b.at_rank(d)) {
      overlap += 1.0;
    } else {
      if (has_a) {
        if (pending.erase(a.at_rank(d).folded()) == 1) {
          overlap += 1.0;
        } else {
          pending.insert(a.at_rank(d).folded());
        }
      }
      if (has_b) {
        if (pending.erase(b.at_rank(d).folded()) == 1) {
          overlap += 1.0;
        } else {
          pending.insert(b.at_rank(d).folded());
        }
      }
    }
    profile[d - 1] = overlap;
  }
  return profile;
}

}  // namespace detail

/// |A ∩ B| / |A ∪ B| on case-folded feature sets.
inline SimilarityResult jaccard(const RankedExplanation& a, const RankedExplanation& b) {
  const std::size_t inter = detail::overlap_count(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return {"jaccard", std::nullopt,
          inter == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni)};
}

/// Weighted Jaccard: mapped pairs contribute Syn(a,b) to the intersection
/// mass (identity pairs contribute 1). The adjusted variant shrinks the
/// union by the number of non-identity mapped pairs.
inline SimilarityResult jaccard_weighted(const RankedExplanation& a,
                                         const RankedExplanation& b,
                                         const FeatureMapping& mapping,
                                         const SynonymityProvider& syn,
                                         const MeasureConfig& config = {}) {
  double numerator = 0.0;
  std::size_t mapped_non_identity = 0;
  for (const auto& pair : mapping.pairs()) {
    if (!pair.target.has_value()) continue;
    numerator += syn(pair.origin, *pair.target);
    if (!pair.is_identity()) ++mapped_non_identity;
  }
  const std::size_t inter = detail::overlap_count(a, b);
  double denominator = static_cast<double>(a.size() + b.size() - inter);
  if (config.jaccard_denominator == JaccardDenominator::adjusted) {
    denominator -= static_cast<double>(mapped_non_identity);
  }
  const double sim = denominator <= 0.0 ? 0.0 : numerator / denominator;
  return {"jaccard", std::nullopt, detail::clamp_unit(sim)};
}

/// Positional disagreement count plus the size difference, normalized by
/// max(|A|, |B|).
inline SimilarityResult kendall(const RankedExplanation& a, const RankedExplanation& b) {
  const std::size_t shared = std::min(a.size(), b.size());
  double raw = 0.0;
  for (std::size_t i = 1; i <= shared; ++i) {
    if (!(a.at_rank(i) == b.at_rank(i))) raw += 1.0;
  }
  raw += static_cast<double>(a.size() > b.size() ? a.size() - b.size()
                                                 : b.size() - a.size());
  const double max_distance = static_cast<double>(std::max(a.size(), b.size()));
  return {"kendall", raw, detail::clamp_unit(1.0 - raw / max_distance)};
}

/// Weighted Kendall: a disagreeing position whose tokens form a mapped pair
/// scales down to 1 - Syn(a,b); every other disagreement counts 1.
inline SimilarityResult kendall_weighted(const RankedExplanation& a,
                                         const RankedExplanation& b,
                                         const FeatureMapping& mapping,
                                         const SynonymityProvider& syn) {
  const std::size_t shared = std::min(a.size(), b.size());
  double raw = 0.0;
  for (std::size_t i = 1; i <= shared; ++i) {
    const Feature& fa = a.at_rank(i);
    const Feature& fb = b.at_rank(i);
    if (fa == fb) continue;
    const MappedPair* pair = mapping.find(fa.folded());
    if (pair != nullptr && pair->target.has_value() && *pair->target == fb) {
      raw += 1.0 - syn(fa, fb);
    } else {
      raw += 1.0;
    }
  }
  raw += static_cast<double>(a.size() > b.size() ? a.size() - b.size()
                                                 : b.size() - a.size());
  const double max_distance = static_cast<double>(std::max(a.size(), b.size()));
  return {"kendall", raw, detail::clamp_unit(1.0 - raw / max_distance)};
}

/// L1 rank displacement over shared features plus a penalty of
/// penalty_scale * |A| (default |A|/2) per feature of A missing from B,
/// normalized by floor(|A|^2 / 2).
inline SimilarityResult spearman_footrule(const RankedExplanation& a,
                                          const RankedExplanation& b,
                                          const MeasureConfig& config = {}) {
  const double penalty = config.footrule_penalty_scale * static_cast<double>(a.size());
  double raw = 0.0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const auto j = b.rank_of(a.at_rank(i));
    if (j.has_value()) {
      raw += std::abs(static_cast<double>(i) - static_cast<double>(*j));
    } else {
      raw += penalty;
    }
  }
  const double max_distance =
      std::floor(static_cast<double>(a.size() * a.size()) / 2.0);
  double sim;
  if (raw == 0.0) {
    sim = 1.0;
  } else if (max_distance <= 0.0) {
    sim = 0.0;
  } else {
    sim = detail::clamp_unit(1.0 - raw / max_distance);
  }
  return {"spearman", raw, sim};
}

/// Weighted footrule, three mutually exclusive cases per feature of A:
/// shared features keep their displacement; a mapped pair a->b contributes
/// min(|i-j|/Syn(a,b), |A|-1), taken as 0 when i = j and, at Syn = 0, as the
/// configured ZeroSynRule; null-mapped features pay the penalty.
inline SimilarityResult spearman_weighted(const RankedExplanation& a,
                                          const RankedExplanation& b,
                                          const FeatureMapping& mapping,
                                          const SynonymityProvider& syn,
                                          const MeasureConfig& config = {}) {
  const double penalty = config.footrule_penalty_scale * static_cast<double>(a.size());
  const double cap = static_cast<double>(a.size()) - 1.0;
  double raw = 0.0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const Feature& fa = a.at_rank(i);
    const auto j = b.rank_of(fa);
    if (j.has_value()) {
      raw += std::abs(static_cast<double>(i) - static_cast<double>(*j));
      continue;
    }
    const MappedPair* pair = mapping.find(fa.folded());
    if (pair != nullptr && pair->target.has_value()) {
      const auto jt = b.rank_of(*pair->target);
      if (!jt.has_value()) {
        raw += penalty;  // target fell outside B; treat as unpaired
        continue;
      }
      const double displacement =
          std::abs(static_cast<double>(i) - static_cast<double>(*jt));
      const double s = syn(fa, *pair->target);
      if (displacement == 0.0) {
        raw += s == 0.0 && config.footrule_zero_syn == ZeroSynRule::penalty ? penalty : 0.0;
      } else if (s == 0.0) {
        raw += config.footrule_zero_syn == ZeroSynRule::cap ? cap : penalty;
      } else {
        raw += std::min(displacement / s, cap);
      }
    } else {
      raw += penalty;
    }
  }
  const double max_distance =
      std::floor(static_cast<double>(a.size() * a.size()) / 2.0);
  double sim;
  if (raw == 0.0) {
    sim = 1.0;
  } else if (max_distance <= 0.0) {
    sim = 0.0;
  } else {
    sim = detail::clamp_unit(1.0 - raw / max_distance);
  }
  return {"spearman", raw, sim};
}

/// Rank-biased overlap with parameter p in (0,1); extrapolated by default.
inline SimilarityResult rbo(const RankedExplanation& a, const RankedExplanation& b,
                            double p, bool extrapolated = true) {
  if (!(p > 0.0 && p < 1.0)) throw Error("rbo parameter p must be in (0,1)");
  const auto profile = detail::rbo_overlap_profile(a, b);
  MeasureId id{MeasureKind::rbo, p};
  return {id.str(), std::nullopt,
          detail::clamp_unit(detail::rbo_series(profile, p, extrapolated))};
}

/// Weighted RBO: at each depth the overlap is augmented by Syn(a,b) for
/// every non-identity mapped pair whose endpoints both lie inside the depth
/// window.
inline SimilarityResult rbo_weighted(const RankedExplanation& a, const RankedExplanation& b,
                                     double p, const FeatureMapping& mapping,
                                     const SynonymityProvider& syn,
                                     bool extrapolated = true) {
  if (!(p > 0.0 && p < 1.0)) throw Error("rbo parameter p must be in (0,1)");
  auto profile = detail::rbo_overlap_profile(a, b);
  std::vector<double> credit_entering(profile.size() + 1, 0.0);
  for (const auto& pair : mapping.pairs()) {
    if (!pair.target.has_value() || pair.is_identity()) continue;
    const auto i = a.rank_of(pair.origin);
    const auto j = b.rank_of(*pair.target);
    if (!i.has_value() || !j.has_value()) continue;
    credit_entering[std::max(*i, *j)] += syn(pair.origin, *pair.target);
  }
  double credit = 0.0;
  for (std::size_t d = 1; d <= profile.size(); ++d) {
    credit += credit_entering[d];
    profile[d - 1] += credit;
  }
  MeasureId id{MeasureKind::rbo, p};
  return {id.str(), std::nullopt,
          detail::clamp_unit(detail::rbo_series(profile, p, extrapolated))};
}

/// Dispatch by measure id, standard form.
inline SimilarityResult evaluate_standard(const MeasureId& id, const RankedExplanation& a,
                                          const RankedExplanation& b,
                                          const MeasureConfig& config = {}) {
  switch (id.kind) {
    case MeasureKind::jaccard: return jaccard(a, b);
    case MeasureKind::kendall: return kendall(a, b);
    case MeasureKind::spearman: return spearman_footrule(a, b, config);
    case MeasureKind::rbo: return rbo(a, b, id.rbo_p, config.rbo_extrapolated);
  }
  throw Error("unreachable measure kind");
}

/// Dispatch by measure id, synonymity-weighted form.
inline SimilarityResult evaluate_weighted(const MeasureId& id, const RankedExplanation& a,
                                          const RankedExplanation& b,
                                          const FeatureMapping& mapping,
                                          const SynonymityProvider& syn,
                                          const MeasureConfig& config = {}) {
  switch (id.kind) {
    case MeasureKind::jaccard: return jaccard_weighted(a, b, mapping, syn, config);
    case MeasureKind::kendall: return kendall_weighted(a, b, mapping, syn);
    case MeasureKind::spearman: return spearman_weighted(a, b, mapping, syn, config);
    case MeasureKind::rbo:
      return rbo_weighted(a, b, id.rbo_p, mapping, syn, config.rbo_extrapolated);
  }
  throw Error("unreachable measure kind");
}

}  // namespace synsim
