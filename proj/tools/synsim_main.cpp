// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.
//
// synsim: similarity between ranked explanations, with and without
// synonymity weighting.
//
//   synsim compare      one explanation pair, all measures, two rows
//   synsim batch-eval   success rates / average similarity over a corpus
//   synsim sensitivity  batch-eval against several synonymity providers
//   synsim simulate     generate a synthetic attack corpus
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synsim/synsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct ProviderSpec {
  std::string kind;  // exact | embedding | thesaurus
  std::string path;  // required for file-backed kinds
  std::string id;
};

// "exact" | "embedding:PATH" | "thesaurus:PATH", id defaults to
// kind or kind:stem for file-backed providers.
ProviderSpec parse_provider_spec(const std::string& text) {
  ProviderSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) spec.path = text.substr(colon + 1);
  if (spec.kind != "exact" && spec.kind != "embedding" && spec.kind != "thesaurus") {
    throw CLI::ValidationError("--providers",
                               "unknown provider kind '" + spec.kind + "'");
  }
  if (spec.kind == "exact") {
    spec.id = "exact";
  } else {
    if (spec.path.empty()) {
      throw CLI::ValidationError("--providers", spec.kind + " needs a path, e.g. " +
                                                    spec.kind + ":vectors.txt");
    }
    spec.id = spec.kind + ":" + std::filesystem::path(spec.path).stem().string();
  }
  return spec;
}

synsim::SynonymityProvider make_provider(const ProviderSpec& spec) {
  if (spec.kind == "exact") return synsim::SynonymityProvider::exact();
  if (spec.kind == "embedding") {
    auto table = std::make_shared<synsim::EmbeddingTable>(
        synsim::EmbeddingTable::load(spec.path));
    return synsim::SynonymityProvider::embedding(std::move(table), spec.id);
  }
  auto lexicon = std::make_shared<synsim::SynonymLexicon>(
      synsim::SynonymLexicon::load(spec.path));
  return synsim::SynonymityProvider::thesaurus(std::move(lexicon), spec.id);
}

std::vector<synsim::MeasureId> parse_measures(const std::vector<std::string>& names) {
  std::vector<synsim::MeasureId> measures;
  for (const auto& name : names) measures.push_back(synsim::MeasureId::parse(name));
  return measures;
}

std::vector<std::string> read_token_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw synsim::IoError("cannot open explanation file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<synsim::SubstitutionEvent> read_substitutions_tsv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw synsim::IoError("cannot open substitutions file: " + path.string());
  std::vector<synsim::SubstitutionEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (synsim::detail::trim(line).empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw synsim::MalformedLine(path.string(), line_no,
                                  "expected 'iteration<TAB>original<TAB>replacement'");
    }
    std::size_t iteration = 0;
    const std::string_view field = std::string_view(line).substr(0, tab1);
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), iteration);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw synsim::MalformedLine(path.string(), line_no, "bad iteration number");
    }
    try {
      events.emplace_back(iteration, synsim::Feature(line.substr(tab1 + 1, tab2 - tab1 - 1)),
                          synsim::Feature(line.substr(tab2 + 1)));
    } catch (const synsim::Error& e) {
      throw synsim::MalformedLine(path.string(), line_no, e.what());
    }
  }
  return events;
}

std::string fixed2(double value) { return synsim::detail::format_fixed(value, 2); }

void print_report_table(const synsim::EvaluationReport& report, std::ostream& out) {
  const std::vector<std::string> header = {"dataset", "measure",      "provider",
                                           "tau",     "base_rate",    "syn_rate",
                                           "base_avg", "syn_avg",     "n",
                                           "skipped"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : report.rows) {
    cells.push_back({row.dataset, row.measure, row.provider,
                     synsim::detail::format_compact(row.tau),
                     synsim::detail::format_fixed(row.base_rate, 4),
                     synsim::detail::format_fixed(row.syn_rate, 4),
                     row.base_avg_sim ? synsim::detail::format_fixed(*row.base_avg_sim, 4) : "-",
                     row.syn_avg_sim ? synsim::detail::format_fixed(*row.syn_avg_sim, 4) : "-",
                     std::to_string(row.n), std::to_string(row.skipped)});
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  const auto print_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : "  ") << row[c]
          << std::string(widths[c] - row[c].size(), ' ');
    }
    out << '\n';
  };
  print_row(header);
  for (const auto& row : cells) print_row(row);
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string original_path;
  std::string perturbed_path;
  std::string substitutions_path;
  std::vector<std::string> measure_names;
  std::string provider = "exact";
  std::string embedding_path;
  std::string lexicon_path;
  std::string jaccard_denominator = "unadjusted";
  bool rbo_extrapolated = true;
};

int run_compare(const CompareArgs& args) {
  const auto original = synsim::parse_explanation(read_token_lines(args.original_path));
  const auto perturbed = synsim::parse_explanation(read_token_lines(args.perturbed_path));
  std::vector<synsim::SubstitutionEvent> substitutions;
  if (!args.substitutions_path.empty()) {
    substitutions = read_substitutions_tsv(args.substitutions_path);
  }
  const auto mapping = synsim::build_mapping(original, perturbed, substitutions);

  ProviderSpec spec;
  spec.kind = args.provider;
  spec.path = args.provider == "embedding" ? args.embedding_path : args.lexicon_path;
  spec.id = args.provider;
  const auto provider = make_provider(spec);

  synsim::MeasureConfig config;
  config.rbo_extrapolated = args.rbo_extrapolated;
  config.jaccard_denominator = args.jaccard_denominator == "adjusted"
                                   ? synsim::JaccardDenominator::adjusted
                                   : synsim::JaccardDenominator::unadjusted;

  const auto measures = parse_measures(args.measure_names);
  std::vector<std::string> standard_row, weighted_row;
  for (const auto& id : measures) {
    standard_row.push_back(
        fixed2(synsim::evaluate_standard(id, original, perturbed, config).similarity));
    weighted_row.push_back(fixed2(
        synsim::evaluate_weighted(id, original, perturbed, mapping, provider, config)
            .similarity));
  }

  std::size_t label_width = 8;  // "standard"
  std::vector<std::size_t> widths;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    widths.push_back(std::max({measures[i].str().size(), standard_row[i].size(),
                               weighted_row[i].size()}));
  }
  const auto print_row = [&](const std::string& label,
                             const std::vector<std::string>& values) {
    std::cout << label << std::string(label_width - label.size(), ' ');
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::cout << "  " << std::string(widths[i] - values[i].size(), ' ') << values[i];
    }
    std::cout << '\n';
  };
  std::vector<std::string> names;
  for (const auto& id : measures) names.push_back(id.str());
  print_row("", names);
  print_row("standard", standard_row);
  print_row("weighted", weighted_row);
  return kExitOk;
}

// ---- batch-eval / sensitivity ----------------------------------------------

struct BatchArgs {
  std::string input_path;
  std::string output_path;
  std::string json_path;
  std::vector<std::string> measure_names;
  std::vector<double> thresholds{0.3, 0.4, 0.5, 0.6};
  std::string provider = "exact";
  std::string embedding_path;
  std::string lexicon_path;
  std::vector<std::string> provider_specs;  // sensitivity only
  std::string dataset;
  std::string jaccard_denominator = "unadjusted";
  bool rbo_extrapolated = true;
  bool filter_own_batch = false;
  bool success_on_equal = false;
  unsigned jobs = 1;
};

int run_batch(const BatchArgs& args, bool sensitivity) {
  std::vector<synsim::SynonymityProvider> providers;
  if (sensitivity) {
    for (const auto& text : args.provider_specs) {
      providers.push_back(make_provider(parse_provider_spec(text)));
    }
  } else {
    ProviderSpec spec;
    spec.kind = args.provider;
    spec.path = args.provider == "embedding" ? args.embedding_path : args.lexicon_path;
    spec.id = args.provider;
    providers.push_back(make_provider(spec));
  }

  const auto records = synsim::read_records(args.input_path);

  synsim::EvalOptions options;
  options.measures = parse_measures(args.measure_names);
  options.thresholds = args.thresholds;
  options.filter_own_batch = args.filter_own_batch;
  options.success_on_equal = args.success_on_equal;
  options.jobs = args.jobs;
  options.dataset = args.dataset.empty()
                        ? std::filesystem::path(args.input_path).stem().string()
                        : args.dataset;
  options.config.rbo_extrapolated = args.rbo_extrapolated;
  options.config.jaccard_denominator = args.jaccard_denominator == "adjusted"
                                           ? synsim::JaccardDenominator::adjusted
                                           : synsim::JaccardDenominator::unadjusted;

  const auto report = synsim::evaluate_corpus_multi(records, providers, options);
  synsim::write_report(report, args.output_path, synsim::ReportFormat::csv);
  if (!args.json_path.empty()) {
    synsim::write_report(report, args.json_path, synsim::ReportFormat::json);
  }
  print_report_table(report, std::cout);
  std::cout << "wrote " << report.rows.size() << " rows to " << args.output_path << '\n';
  return kExitOk;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::size_t n = 50;
  std::uint64_t seed = 0;
  std::string lexicon_path;
  std::string guiding_measure = "jaccard";
  double tau = 0.5;
  std::size_t k = 5;
  std::size_t max_iterations = 10;
  std::string output_path;
  unsigned jobs = 1;
};

int run_simulate(const SimulateArgs& args) {
  synsim::SimulationConfig config;
  config.seed = args.seed;
  config.max_iterations = args.max_iterations;
  config.guiding_measure = synsim::MeasureId::parse(args.guiding_measure);
  config.tau = args.tau;
  config.k = args.k;
  config.lexicon = synsim::SynonymLexicon::load(args.lexicon_path);

  // Vocabulary: every headword plus every synonym in the lexicon.
  std::vector<std::string> vocabulary = config.lexicon.headwords();
  for (const auto& head : config.lexicon.headwords()) {
    for (const auto& syn : *config.lexicon.synonyms(head)) vocabulary.push_back(syn);
  }

  const auto corpus = synsim::generate_corpus(args.n, vocabulary, config, args.jobs);
  synsim::write_records(corpus, args.output_path);

  std::size_t successes = 0;
  for (const auto& record : corpus) {
    if (record.final_similarity.has_value() &&
        synsim::success(*record.final_similarity, record.threshold)) {
      ++successes;
    }
  }
  std::cout << "generated " << corpus.size() << " records (measure "
            << config.guiding_measure.str() << ", tau "
            << synsim::detail::format_compact(args.tau) << "): " << successes
            << " successes, " << (corpus.size() - successes) << " failures\n"
            << "wrote " << args.output_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity between ranked explanations, standard and synonymity-weighted"};
  app.require_subcommand(1);

  const std::vector<std::string> default_measures = {"jaccard", "kendall", "spearman",
                                                     "rbo@0.5", "rbo@0.7", "rbo@0.9"};

  CompareArgs compare_args;
  compare_args.measure_names = default_measures;
  auto* compare = app.add_subcommand(
      "compare", "compare one explanation pair under every measure");
  compare->add_option("--original", compare_args.original_path,
                      "original explanation, one token per line")
      ->required();
  compare->add_option("--perturbed", compare_args.perturbed_path,
                      "perturbed explanation, one token per line")
      ->required();
  compare->add_option("--substitutions", compare_args.substitutions_path,
                      "substitution log TSV: iteration, original, replacement");
  compare->add_option("--measures", compare_args.measure_names, "measure ids")
      ->delimiter(',');
  compare->add_option("--provider", compare_args.provider, "synonymity provider")
      ->check(CLI::IsMember({"exact", "embedding", "thesaurus"}));
  compare->add_option("--embedding", compare_args.embedding_path,
                      "embedding vectors (GloVe text format)")
      ->envname("SYNSIM_EMBEDDING");
  compare->add_option("--lexicon", compare_args.lexicon_path,
                      "synonym lexicon (headword TAB syn1,syn2,...)");
  compare->add_option("--jaccard-denominator", compare_args.jaccard_denominator)
      ->check(CLI::IsMember({"unadjusted", "adjusted"}));
  compare->add_option("--rbo-extrapolated", compare_args.rbo_extrapolated,
                      "use extrapolated RBO (default true)");

  BatchArgs batch_args;
  batch_args.measure_names = default_measures;
  auto* batch = app.add_subcommand(
      "batch-eval", "evaluate a JSONL corpus: success rates and average similarity");
  batch->add_option("--input", batch_args.input_path, "records.jsonl")->required();
  batch->add_option("--output", batch_args.output_path, "report CSV path")->required();
  batch->add_option("--json", batch_args.json_path, "optional JSON report mirror");
  batch->add_option("--measures", batch_args.measure_names, "measure ids")->delimiter(',');
  batch->add_option("--thresholds", batch_args.thresholds, "success thresholds in (0,1)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0).description("in (0,1)"));
  batch->add_option("--provider", batch_args.provider, "synonymity provider")
      ->check(CLI::IsMember({"exact", "embedding", "thesaurus"}));
  batch->add_option("--embedding", batch_args.embedding_path, "embedding vectors")
      ->envname("SYNSIM_EMBEDDING");
  batch->add_option("--lexicon", batch_args.lexicon_path, "synonym lexicon");
  batch->add_option("--dataset", batch_args.dataset,
                    "dataset label (default: input file stem)");
  batch->add_option("--jaccard-denominator", batch_args.jaccard_denominator)
      ->check(CLI::IsMember({"unadjusted", "adjusted"}));
  batch->add_option("--rbo-extrapolated", batch_args.rbo_extrapolated);
  batch->add_flag("--filter-own-batch", batch_args.filter_own_batch,
                  "restrict each cell to records guided by that measure and threshold");
  batch->add_flag("--success-on-equal", batch_args.success_on_equal,
                  "count similarity == threshold as success");
  batch->add_option("--jobs", batch_args.jobs, "worker threads")
      ->check(CLI::Range(1u, 256u));

  BatchArgs sensitivity_args;
  sensitivity_args.measure_names = default_measures;
  auto* sensitivity = app.add_subcommand(
      "sensitivity", "batch-eval across several synonymity providers");
  sensitivity->add_option("--input", sensitivity_args.input_path, "records.jsonl")
      ->required();
  sensitivity->add_option("--output", sensitivity_args.output_path, "report CSV path")
      ->required();
  sensitivity->add_option("--json", sensitivity_args.json_path, "optional JSON mirror");
  sensitivity
      ->add_option("--providers", sensitivity_args.provider_specs,
                   "provider specs: exact | embedding:PATH | thesaurus:PATH")
      ->required()
      ->delimiter(',');
  sensitivity->add_option("--measures", sensitivity_args.measure_names)->delimiter(',');
  sensitivity->add_option("--thresholds", sensitivity_args.thresholds)
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0).description("in (0,1)"));
  sensitivity->add_option("--dataset", sensitivity_args.dataset);
  sensitivity->add_option("--jaccard-denominator", sensitivity_args.jaccard_denominator)
      ->check(CLI::IsMember({"unadjusted", "adjusted"}));
  sensitivity->add_option("--rbo-extrapolated", sensitivity_args.rbo_extrapolated);
  sensitivity->add_flag("--filter-own-batch", sensitivity_args.filter_own_batch);
  sensitivity->add_flag("--success-on-equal", sensitivity_args.success_on_equal);
  sensitivity->add_option("--jobs", sensitivity_args.jobs)->check(CLI::Range(1u, 256u));

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate", "generate a synthetic adversarial corpus (JSONL)");
  simulate->add_option("--n", simulate_args.n, "number of records")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", simulate_args.seed, "master seed");
  simulate->add_option("--lexicon", simulate_args.lexicon_path, "substitution lexicon")
      ->required();
  simulate->add_option("--guiding-measure", simulate_args.guiding_measure,
                       "measure the attack minimizes");
  simulate->add_option("--tau", simulate_args.tau, "success threshold")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--k", simulate_args.k, "explanation size")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--max-iterations", simulate_args.max_iterations)
      ->check(CLI::PositiveNumber);
  simulate->add_option("--output", simulate_args.output_path, "JSONL output path")
      ->required();
  simulate->add_option("--jobs", simulate_args.jobs)->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitUsageError;
  }

  // Cross-flag validation, before any file is touched.
  if (compare->parsed() && compare_args.provider == "embedding" &&
      compare_args.embedding_path.empty()) {
    std::cerr << "compare: --provider embedding requires --embedding\n";
    return kExitUsageError;
  }
  if (compare->parsed() && compare_args.provider == "thesaurus" &&
      compare_args.lexicon_path.empty()) {
    std::cerr << "compare: --provider thesaurus requires --lexicon\n";
    return kExitUsageError;
  }
  if (batch->parsed() && batch_args.provider == "embedding" &&
      batch_args.embedding_path.empty()) {
    std::cerr << "batch-eval: --provider embedding requires --embedding\n";
    return kExitUsageError;
  }
  if (batch->parsed() && batch_args.provider == "thesaurus" &&
      batch_args.lexicon_path.empty()) {
    std::cerr << "batch-eval: --provider thesaurus requires --lexicon\n";
    return kExitUsageError;
  }
  for (const BatchArgs* args : {&batch_args, &sensitivity_args}) {
    for (const double tau : args->thresholds) {
      if (tau <= 0.0 || tau >= 1.0) {
        std::cerr << "thresholds must lie strictly inside (0,1)\n";
        return kExitUsageError;
      }
    }
  }
  try {
    for (const auto& name : compare_args.measure_names) synsim::MeasureId::parse(name);
    for (const auto& name : batch_args.measure_names) synsim::MeasureId::parse(name);
    for (const auto& name : sensitivity_args.measure_names) synsim::MeasureId::parse(name);
    synsim::MeasureId::parse(simulate_args.guiding_measure);
    if (sensitivity->parsed()) {
      for (const auto& text : sensitivity_args.provider_specs) parse_provider_spec(text);
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsageError;
  } catch (const synsim::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (compare->parsed()) return run_compare(compare_args);
    if (batch->parsed()) return run_batch(batch_args, /*sensitivity=*/false);
    if (sensitivity->parsed()) return run_batch(sensitivity_args, /*sensitivity=*/true);
    if (simulate->parsed()) return run_simulate(simulate_args);
  } catch (const synsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsageError;
}
