// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"
#include "synsim/harness.hpp"

// Serialization: corpora as JSONL (one record per line, line-addressable
// errors), reports as CSV matching the fixed header
//   dataset,measure,provider,tau,base_rate,syn_rate,base_avg_sim,syn_avg_sim,n,skipped
// with an optional JSON mirror. All rendering is locale-independent.

namespace synsim {

enum class ReportFormat { csv, json };

namespace detail {

/// Fixed-point rendering via to_chars; never locale-dependent.
inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

/// Shortest round-trip rendering (used for thresholds and RBO parameters).
inline std::string format_compact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view field, const std::string& source,
                           std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw MalformedLine(source, line_no, "bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail

inline nlohmann::ordered_json record_to_json(const AdversarialRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["original_text"] = record.original_text;
  j["perturbed_text"] = record.perturbed_text;
  j["original_explanation"] = record.original_explanation.tokens();
  j["perturbed_explanation"] = record.perturbed_explanation.tokens();
  nlohmann::ordered_json subs = nlohmann::ordered_json::array();
  for (const auto& s : record.substitutions) {
    subs.push_back({{"iteration", s.iteration},
                    {"original", s.original.surface()},
                    {"replacement", s.replacement.surface()}});
  }
  j["substitutions"] = std::move(subs);
  j["guiding_measure"] = record.guiding_measure;
  j["threshold"] = record.threshold;
  if (record.final_similarity.has_value()) {
    j["final_similarity"] = *record.final_similarity;
  }
  return j;
}

inline AdversarialRecord record_from_json(const nlohmann::json& j) {
  const auto explanation = [&](const char* key) {
    std::vector<std::string> tokens = j.at(key).get<std::vector<std::string>>();
    return parse_explanation(tokens);
  };
  std::vector<SubstitutionEvent> substitutions;
  if (j.contains("substitutions")) {
    for (const auto& s : j.at("substitutions")) {
      substitutions.emplace_back(s.at("iteration").get<std::size_t>(),
                                 Feature(s.at("original").get<std::string>()),
                                 Feature(s.at("replacement").get<std::string>()));
    }
  }
  AdversarialRecord record{
      j.at("id").get<std::string>(),
      j.value("original_text", std::string()),
      j.value("perturbed_text", std::string()),
      explanation("original_explanation"),
      explanation("perturbed_explanation"),
      std::move(substitutions),
      j.value("guiding_measure", std::string()),
      j.value("threshold", 0.5),
      std::nullopt};
  if (j.contains("final_similarity") && !j.at("final_similarity").is_null()) {
    record.final_similarity = j.at("final_similarity").get<double>();
  }
  record.validate();
  return record;
}

/// Reads a JSONL corpus. Unknown fields are ignored; malformed lines and
/// duplicate ids are reported with their line numbers.
inline std::vector<AdversarialRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  std::vector<AdversarialRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const MalformedLine&) {
      throw;
    } catch (const std::exception& e) {
      throw MalformedLine(path.string(), line_no, e.what());
    }
    if (!seen_ids.insert(records.back().id).second) {
      throw DuplicateRecordId(path.string() + ":" + std::to_string(line_no) +
                              ": duplicate record id '" + records.back().id + "'");
    }
  }
  return records;
}

inline void write_records(std::span<const AdversarialRecord> records,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file: " + path.string());
  for (const auto& record : records) {
    out << record_to_json(record).dump() << '\n';
  }
  if (!out) throw IoError("error while writing " + path.string());
}

inline void write_report_csv(const EvaluationReport& report, std::ostream& out) {
  out << "dataset,measure,provider,tau,base_rate,syn_rate,base_avg_sim,syn_avg_sim,n,skipped\n";
  for (const auto& row : report.rows) {
    out << row.dataset << ',' << row.measure << ',' << row.provider << ','
        << detail::format_compact(row.tau) << ',' << detail::format_fixed(row.base_rate, 4)
        << ',' << detail::format_fixed(row.syn_rate, 4) << ','
        << (row.base_avg_sim ? detail::format_fixed(*row.base_avg_sim, 4) : "-") << ','
        << (row.syn_avg_sim ? detail::format_fixed(*row.syn_avg_sim, 4) : "-") << ','
        << row.n << ',' << row.skipped << '\n';
  }
}

inline void write_report_json(const EvaluationReport& report, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["dataset"] = row.dataset;
    j["measure"] = row.measure;
    j["provider"] = row.provider;
    j["tau"] = row.tau;
    j["base_rate"] = row.base_rate;
    j["syn_rate"] = row.syn_rate;
    j["base_avg_sim"] = row.base_avg_sim ? nlohmann::ordered_json(*row.base_avg_sim)
                                         : nlohmann::ordered_json(nullptr);
    j["syn_avg_sim"] = row.syn_avg_sim ? nlohmann::ordered_json(*row.syn_avg_sim)
                                       : nlohmann::ordered_json(nullptr);
    j["n"] = row.n;
    j["skipped"] = row.skipped;
    j["n_success_base"] = row.n_success_base;
    j["n_success_syn"] = row.n_success_syn;
    rows.push_back(std::move(j));
  }
  out << rows.dump(2) << '\n';
}

inline void write_report(const EvaluationReport& report, const std::filesystem::path& path,
                         ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report file: " + path.string());
  if (format == ReportFormat::csv) {
    write_report_csv(report, out);
  } else {
    write_report_json(report, out);
  }
  if (!out) throw IoError("error while writing " + path.string());
}

/// Reads back a CSV report (success counts are not part of the CSV and come
/// back as zero).
inline EvaluationReport read_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report file: " + path.string());
  EvaluationReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("dataset,", 0) != 0) {
        throw MalformedLine(path.string(), line_no, "missing CSV header");
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw MalformedLine(path.string(), line_no, "expected 10 fields");
    }
    ReportRow row;
    row.dataset = fields[0];
    row.measure = fields[1];
    row.provider = fields[2];
    row.tau = detail::parse_double(fields[3], path.string(), line_no);
    row.base_rate = detail::parse_double(fields[4], path.string(), line_no);
    row.syn_rate = detail::parse_double(fields[5], path.string(), line_no);
    if (fields[6] != "-") {
      row.base_avg_sim = detail::parse_double(fields[6], path.string(), line_no);
    }
    if (fields[7] != "-") {
      row.syn_avg_sim = detail::parse_double(fields[7], path.string(), line_no);
    }
    row.n = static_cast<std::size_t>(
        detail::parse_double(fields[8], path.string(), line_no));
    row.skipped = static_cast<std::size_t>(
        detail::parse_double(fields[9], path.string(), line_no));
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace synsim
