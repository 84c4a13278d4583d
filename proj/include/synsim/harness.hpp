// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synsim/detail/parallel.hpp"
#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"
#include "synsim/mapping.hpp"
#include "synsim/measures.hpp"
#include "synsim/synonymity.hpp"

// Batch evaluation over corpora of AdversarialRecords: per-(measure,
// provider, threshold) attack-success rates and average similarity of the
// successful attacks, plus cross-provider sensitivity reports. Per-record
// work parallelizes over --jobs workers; aggregation always runs in record
// order, so reports are byte-identical for any job count.

namespace synsim {

/// One report cell. Average similarities are absent exactly when the
/// corresponding success count is zero.
struct ReportRow {
  std::string dataset;
  std::string measure;
  std::string provider;
  double tau = 0.0;
  double base_rate = 0.0;
  double syn_rate = 0.0;
  std::optional<double> base_avg_sim;
  std::optional<double> syn_avg_sim;
  std::size_t n = 0;        // records evaluated (valid, after own-batch filter)
  std::size_t skipped = 0;  // records dropped for mapping/parse errors
  std::size_t n_success_base = 0;
  std::size_t n_success_syn = 0;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;
};

/// An attack succeeds when the similarity falls below tau (strictly, unless
/// count_equal widens the comparison to <=).
inline bool success(double similarity, double tau, bool count_equal = false) {
  return count_equal ? similarity <= tau : similarity < tau;
}

struct EvalOptions {
  std::vector<MeasureId> measures = MeasureId::default_set();
  std::vector<double> thresholds{0.3, 0.4, 0.5, 0.6};
  MeasureConfig config;
  bool success_on_equal = false;
  bool filter_own_batch = false;
  std::string dataset = "corpus";
  unsigned jobs = 1;
};

/// Standard and weighted similarity of one record under one measure. The
/// record's own guiding measure plays no role here.
inline std::pair<double, double> evaluate_record(const AdversarialRecord& record,
                                                 const MeasureId& measure,
                                                 const SynonymityProvider& provider,
                                                 const MeasureConfig& config = {}) {
  const FeatureMapping mapping = build_mapping(
      record.original_explanation, record.perturbed_explanation, record.substitutions);
  const double base =
      evaluate_standard(measure, record.original_explanation, record.perturbed_explanation,
                        config)
          .similarity;
  const double weighted =
      evaluate_weighted(measure, record.original_explanation, record.perturbed_explanation,
                        mapping, provider, config)
          .similarity;
  return {base, weighted};
}

namespace detail {

struct RecordSims {
  bool valid = false;
  std::vector<double> base;      // per measure
  std::vector<double> weighted;  // per provider * measure
};

inline std::vector<double> sorted_unique(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace detail

/// Evaluates a corpus against several providers at once; one row group per
/// provider, all sharing identical base columns. Records whose mapping
/// cannot be built are counted as skipped, never silently dropped.
inline EvaluationReport evaluate_corpus_multi(std::span<const AdversarialRecord> records,
                                              std::span<const SynonymityProvider> providers,
                                              const EvalOptions& options) {
  if (records.empty()) throw EmptyCorpus("corpus has no records");
  if (providers.empty()) throw Error("no synonymity providers given");
  if (options.measures.empty()) throw Error("no measures selected");
  const std::vector<double> thresholds = detail::sorted_unique(options.thresholds);
  if (thresholds.empty()) throw Error("no thresholds selected");

  const std::size_t n_measures = options.measures.size();
  const std::size_t n_providers = providers.size();
  std::vector<detail::RecordSims> sims(records.size());

  detail::parallel_for(records.size(), options.jobs, [&](std::size_t r) {
    const AdversarialRecord& record = records[r];
    detail::RecordSims& out = sims[r];
    try {
      record.validate();
      const FeatureMapping mapping =
          build_mapping(record.original_explanation, record.perturbed_explanation,
                        record.substitutions);
      out.base.resize(n_measures);
      out.weighted.resize(n_providers * n_measures);
      for (std::size_t m = 0; m < n_measures; ++m) {
        out.base[m] = evaluate_standard(options.measures[m], record.original_explanation,
                                        record.perturbed_explanation, options.config)
                          .similarity;
        for (std::size_t p = 0; p < n_providers; ++p) {
          out.weighted[p * n_measures + m] =
              evaluate_weighted(options.measures[m], record.original_explanation,
                                record.perturbed_explanation, mapping, providers[p],
                                options.config)
                  .similarity;
        }
      }
      out.valid = true;
    } catch (const Error&) {
      out.valid = false;
    }
  });

  std::size_t skipped = 0;
  for (const auto& s : sims) {
    if (!s.valid) ++skipped;
  }

  EvaluationReport report;
  for (std::size_t p = 0; p < n_providers; ++p) {
    for (std::size_t m = 0; m < n_measures; ++m) {
      const std::string measure_name = options.measures[m].str();
      for (const double tau : thresholds) {
        ReportRow row;
        row.dataset = options.dataset;
        row.measure = measure_name;
        row.provider = providers[p].id();
        row.tau = tau;
        row.skipped = skipped;
        double base_sum = 0.0, syn_sum = 0.0;
        for (std::size_t r = 0; r < records.size(); ++r) {
          if (!sims[r].valid) continue;
          if (options.filter_own_batch &&
              (records[r].guiding_measure != measure_name ||
               std::abs(records[r].threshold - tau) > 1e-9)) {
            continue;
          }
          ++row.n;
          const double base = sims[r].base[m];
          const double weighted = sims[r].weighted[p * n_measures + m];
          if (success(base, tau, options.success_on_equal)) {
            ++row.n_success_base;
            base_sum += base;
          }
          if (success(weighted, tau, options.success_on_equal)) {
            ++row.n_success_syn;
            syn_sum += weighted;
          }
        }
        if (row.n > 0) {
          row.base_rate = static_cast<double>(row.n_success_base) / static_cast<double>(row.n);
          row.syn_rate = static_cast<double>(row.n_success_syn) / static_cast<double>(row.n);
        }
        if (row.n_success_base > 0) {
          row.base_avg_sim = base_sum / static_cast<double>(row.n_success_base);
        }
        if (row.n_success_syn > 0) {
          row.syn_avg_sim = syn_sum / static_cast<double>(row.n_success_syn);
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

/// Single-provider batch evaluation.
inline EvaluationReport evaluate_corpus(std::span<const AdversarialRecord> records,
                                        const SynonymityProvider& provider,
                                        const EvalOptions& options = {}) {
  return evaluate_corpus_multi(records, std::span<const SynonymityProvider>(&provider, 1),
                               options);
}

/// Cross-provider comparison over identical records and measures, one row
/// group per provider. Base columns are computed once and shared.
inline EvaluationReport sensitivity_analysis(std::span<const AdversarialRecord> records,
                                             std::span<const SynonymityProvider> providers,
                                             const EvalOptions& options = {}) {
  return evaluate_corpus_multi(records, providers, options);
}

}  // namespace synsim
