// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.
//
// Brute-force reference implementations of the standard measures, written
// against plain token vectors with naive set operations and per-depth
// loops. They share no code with the library implementations they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

inline double jaccard(const Tokens& a, const Tokens& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  std::set<std::string> inter;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(inter, inter.begin()));
  std::set<std::string> uni;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                 std::inserter(uni, uni.begin()));
  if (inter.empty()) return 0.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

inline double kendall(const Tokens& a, const Tokens& b) {
  double distance = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) distance += 1.0;
  }
  distance += std::abs(static_cast<double>(a.size()) - static_cast<double>(b.size()));
  return 1.0 - distance / static_cast<double>(std::max(a.size(), b.size()));
}

inline double spearman(const Tokens& a, const Tokens& b) {
  const double penalty = static_cast<double>(a.size()) / 2.0;
  double distance = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) {
        distance += std::abs(static_cast<double>(i) - static_cast<double>(j));
        found = true;
        break;
      }
    }
    if (!found) distance += penalty;
  }
  const double max_distance = std::floor(static_cast<double>(a.size() * a.size()) / 2.0);
  if (distance == 0.0) return 1.0;
  if (max_distance <= 0.0) return 0.0;
  const double sim = 1.0 - distance / max_distance;
  return sim < 0.0 ? 0.0 : sim;
}

inline double rbo(const Tokens& a, const Tokens& b, double p, bool extrapolated) {
  const std::size_t k = std::max(a.size(), b.size());
  double sum = 0.0;
  double last_fraction = 0.0;
  for (std::size_t d = 1; d <= k; ++d) {
    const std::set<std::string> pa(a.begin(), a.begin() + std::min(d, a.size()));
    const std::set<std::string> pb(b.begin(), b.begin() + std::min(d, b.size()));
    std::size_t overlap = 0;
    for (const auto& t : pa) {
      if (pb.count(t) != 0) ++overlap;
    }
    last_fraction = static_cast<double>(overlap) / static_cast<double>(d);
    sum += std::pow(p, static_cast<double>(d - 1)) * last_fraction;
  }
  double result = (1.0 - p) * sum;
  if (extrapolated) result += std::pow(p, static_cast<double>(k)) * last_fraction;
  return result;
}

/// Weighted RBO against an explicit (origin, target, syn) pair list: at each
/// depth, scan every pair and credit those with both endpoints inside the
/// depth window.
struct SynPair {
  std::string origin;
  std::string target;
  double syn;
};

inline double rbo_weighted(const Tokens& a, const Tokens& b, double p,
                           const std::vector<SynPair>& pairs, bool extrapolated) {
  const std::size_t k = std::max(a.size(), b.size());
  double sum = 0.0;
  double last_fraction = 0.0;
  for (std::size_t d = 1; d <= k; ++d) {
    const std::set<std::string> pa(a.begin(), a.begin() + std::min(d, a.size()));
    const std::set<std::string> pb(b.begin(), b.begin() + std::min(d, b.size()));
    double overlap = 0.0;
    for (const auto& t : pa) {
      if (pb.count(t) != 0) overlap += 1.0;
    }
    for (const auto& pair : pairs) {
      if (pair.origin == pair.target) continue;
      if (pa.count(pair.origin) != 0 && pb.count(pair.target) != 0) overlap += pair.syn;
    }
    last_fraction = overlap / static_cast<double>(d);
    sum += std::pow(p, static_cast<double>(d - 1)) * last_fraction;
  }
  double result = (1.0 - p) * sum;
  if (extrapolated) result += std::pow(p, static_cast<double>(k)) * last_fraction;
  return result;
}

}  // namespace oracle
