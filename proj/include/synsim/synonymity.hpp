// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synsim/detail/text.hpp"
#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"

namespace synsim {

/// Word vectors keyed by case-folded token, all with the same dimension.
///
/// The text format is one entry per line, `token c1 c2 ... cd`, no header
/// (the common GloVe distribution layout). The dimension is inferred from
/// the first line; lines with a different component count, or with
/// non-finite components, are rejected with their line number. Duplicate
/// tokens keep the first occurrence.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  static EmbeddingTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding file: " + path.string());
    EmbeddingTable table(0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::trim(line).empty()) {
        throw MalformedLine(path.string(), line_no, "blank line in embedding file");
      }
      std::string_view rest(line);
      const auto sep = rest.find(' ');
      if (sep == std::string_view::npos) {
        throw MalformedLine(path.string(), line_no, "no vector components");
      }
      if (sep == 0) {
        throw MalformedLine(path.string(), line_no, "empty token");
      }
      std::string token = detail::fold_case(rest.substr(0, sep));
      rest.remove_prefix(sep + 1);
      std::vector<double> components;
      while (!rest.empty()) {
        const auto next = rest.find(' ');
        const std::string_view field = rest.substr(0, next);
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
          throw MalformedLine(path.string(), line_no,
                              "bad vector component '" + std::string(field) + "'");
        }
        components.push_back(value);
        if (next == std::string_view::npos) break;
        rest.remove_prefix(next + 1);
      }
      if (table.dimension_ == 0) table.dimension_ = components.size();
      if (components.size() != table.dimension_) {
        throw MalformedLine(path.string(), line_no,
                            "expected " + std::to_string(table.dimension_) +
                                " components, got " + std::to_string(components.size()));
      }
      table.entries_.emplace(std::move(token), std::move(components));
    }
    return table;
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }

  void insert(const std::string& token, std::vector<double> vec) {
    if (dimension_ == 0) dimension_ = vec.size();
    if (vec.size() != dimension_) {
      throw Error("vector for '" + token + "' has wrong dimension");
    }
    entries_.insert_or_assign(detail::fold_case(token), std::move(vec));
  }

  const std::vector<double>* find(const std::string& folded_token) const {
    const auto it = entries_.find(folded_token);
    return it == entries_.end() ? nullptr : &it->second;
  }

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

/// A thesaurus: headword -> set of synonyms, all case-folded. Lookup is
/// directional; the synonym set never contains its own headword.
///
/// File format: one entry per line, `headword TAB syn1,syn2,...`; an empty
/// synonym list is allowed. Repeated headwords merge their sets.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  static SynonymLexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon file: " + path.string());
    SynonymLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::trim(line).empty()) continue;
      const auto tab = line.find('\t');
      const std::string head = detail::fold_case(detail::trim(line.substr(0, tab)));
      if (head.empty()) {
        throw MalformedLine(path.string(), line_no, "missing headword");
      }
      lexicon.entries_.try_emplace(head);
      if (tab == std::string::npos) continue;
      std::string_view rest = std::string_view(line).substr(tab + 1);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto word = detail::trim(rest.substr(0, comma));
        if (!word.empty()) lexicon.add(head, std::string(word));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    return lexicon;
  }

  void add(const std::string& headword, const std::string& synonym) {
    const std::string head = detail::fold_case(detail::trim(headword));
    const std::string syn = detail::fold_case(detail::trim(synonym));
    if (head.empty() || syn.empty()) throw Error("empty lexicon token");
    if (head == syn) return;
    entries_[head].insert(syn);
  }

  void add_headword(const std::string& headword) {
    entries_.try_emplace(detail::fold_case(detail::trim(headword)));
  }

  bool has_headword(const std::string& folded) const { return entries_.count(folded) != 0; }

  bool is_synonym(const std::string& head_folded, const std::string& word_folded) const {
    const auto it = entries_.find(head_folded);
    return it != entries_.end() && it->second.count(word_folded) != 0;
  }

  /// Synonym set of a headword (sorted), or nullptr when absent.
  const std::set<std::string>* synonyms(const std::string& folded) const {
    const auto it = entries_.find(folded);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> headwords() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [head, syns] : entries_) out.push_back(head);
    return out;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

/// Degenerate synonymity: 1 on identical case-folded tokens, else 0.
/// Reduces every weighted measure to its standard counterpart.
inline double syn_exact(const Feature& a, const Feature& b) {
  return a.folded() == b.folded() ? 1.0 : 0.0;
}

/// Cosine similarity between stored vectors, clamped to [0,1]. Identical
/// tokens score 1 even out of vocabulary; any other out-of-vocabulary
/// comparison scores 0. A stored zero-norm vector raises ZeroVector.
inline double syn_embedding(const Feature& a, const Feature& b, const EmbeddingTable& table) {
  if (a.folded() == b.folded()) return 1.0;
  const std::vector<double>* va = table.find(a.folded());
  const std::vector<double>* vb = table.find(b.folded());
  if (va == nullptr || vb == nullptr) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < va->size(); ++i) {
    dot += (*va)[i] * (*vb)[i];
    na += (*va)[i] * (*va)[i];
    nb += (*vb)[i] * (*vb)[i];
  }
  if (na == 0.0) throw ZeroVector("zero-norm vector stored for '" + a.folded() + "'");
  if (nb == 0.0) throw ZeroVector("zero-norm vector stored for '" + b.folded() + "'");
  const double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  if (cosine <= 0.0) return 0.0;
  return cosine >= 1.0 ? 1.0 : cosine;
}

/// Dichotomous synonymity: 1 when b is in a's synonym set (or a = b), else 0.
inline double syn_thesaurus(const Feature& a, const Feature& b, const SynonymLexicon& lexicon) {
  if (a.folded() == b.folded()) return 1.0;
  return lexicon.is_synonym(a.folded(), b.folded()) ? 1.0 : 0.0;
}

/// A pluggable Syn(a,b) -> [0,1] with Syn(x,x) = 1. The identity case and
/// the [0,1] clamp are enforced here, so any score function satisfies the
/// provider contract. Queries are always Syn(origin, target); symmetry is
/// neither assumed nor required.
class SynonymityProvider {
 public:
  using ScoreFn = std::function<double(const Feature&, const Feature&)>;

  SynonymityProvider(std::string id, ScoreFn score)
      : id_(std::move(id)), score_(std::move(score)) {}

  double operator()(const Feature& a, const Feature& b) const {
    if (a.folded() == b.folded()) return 1.0;
    const double s = score_(a, b);
    if (s <= 0.0) return 0.0;
    return s >= 1.0 ? 1.0 : s;
  }

  const std::string& id() const { return id_; }

  static SynonymityProvider exact() {
    return SynonymityProvider("exact", [](const Feature& a, const Feature& b) {
      return syn_exact(a, b);
    });
  }

  static SynonymityProvider embedding(std::shared_ptr<const EmbeddingTable> table,
                                      std::string id = "embedding") {
    return SynonymityProvider(std::move(id),
                              [table = std::move(table)](const Feature& a, const Feature& b) {
                                return syn_embedding(a, b, *table);
                              });
  }

  static SynonymityProvider thesaurus(std::shared_ptr<const SynonymLexicon> lexicon,
                                      std::string id = "thesaurus") {
    return SynonymityProvider(std::move(id),
                              [lexicon = std::move(lexicon)](const Feature& a, const Feature& b) {
                                return syn_thesaurus(a, b, *lexicon);
                              });
  }

 private:
  std::string id_;
  ScoreFn score_;
};

}  // namespace synsim
