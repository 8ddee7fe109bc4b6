#include "ayah/cli.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"

#include "ayah/augment.hpp"
#include "ayah/corpus.hpp"
#include "ayah/dataset.hpp"
#include "ayah/digest.hpp"
#include "ayah/error.hpp"
#include "ayah/eval.hpp"
#include "ayah/http_provider.hpp"
#include "ayah/io.hpp"
#include "ayah/pairs.hpp"
#include "ayah/retrieval.hpp"
#include "ayah/run.hpp"
#include "ayah/scorer.hpp"
#include "ayah/text.hpp"

namespace ayah::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char *kToolVersion = "0.1.0";

/// Reported in `stats`: the expansion counts quoted for the published
/// dataset do not follow from its own arithmetic.
constexpr const char *kExpansionNote =
    "note: expansion yields base x (1 + n) questions. The published expanded "
    "set quotes 629 base questions rephrased twice as 1895 questions, but "
    "629 x 3 = 1887; the 8-question gap is unexplained and is not "
    "reconciled here. Counts above are computed from the input files only.";

/// Raised for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a run was configured with; echoed into artifact metadata.
struct Manifest {
  std::string corpus_ar;
  std::string corpus_en;
  std::string questions;
  std::string qrels;
  std::string cache;
  std::string exclude;
  std::string scorer = "lexical";
  std::string fixture;
  std::string endpoint;
  std::string provider = "remote";
  std::string provider_url;
  std::string provider_key;
  std::uint64_t seed = 13;
  std::size_t k = 10;
  std::string threshold = "none";
  std::string tag = "ours";
  bool deterministic = false;
  std::size_t jobs = 1;
  std::size_t parallel = 4;
  double k1 = 1.2;
  double b = 0.75;
};

struct Context {
  Manifest m;
  std::ostream &out;
  std::ostream &err;
};

void write_metadata(const Context &ctx, const std::string &artifact,
                    const std::string &subcommand,
                    const std::map<std::string, std::string> &inputs,
                    ordered_json notes = ordered_json::object()) {
  ordered_json meta;
  meta["tool"] = "ayah";
  meta["version"] = kToolVersion;
  meta["subcommand"] = subcommand;
  meta["seed"] = ctx.m.seed;
  meta["k"] = ctx.m.k;
  meta["threshold"] = ctx.m.threshold;
  meta["run_tag"] = ctx.m.tag;
  meta["deterministic"] = ctx.m.deterministic;
  ordered_json in = ordered_json::object();
  for (const auto &[name, path] : inputs)
    if (!path.empty())
      in[name] = {{"path", path}, {"sha256", sha256_file_hex(path)}};
  meta["inputs"] = std::move(in);
  meta["notes"] = std::move(notes);
  if (!ctx.m.deterministic) {
    auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    meta["created_at"] = buf;
  }
  io::write_file_atomic(artifact + ".meta.json", meta.dump(2) + "\n");
}

std::vector<Question> select_split(const std::vector<Question> &questions,
                                   const std::string &split) {
  if (split.empty())
    return questions;
  auto wanted = split_from_token(split);
  std::vector<Question> out;
  for (const auto &q : questions)
    if (q.split == *wanted)
      out.push_back(q);
  return out;
}

/// Judgments of the given questions only, so a split run is scored against
/// its own split.
Qrels select_judgments(const Qrels &qrels,
                       const std::vector<Question> &questions) {
  std::unordered_set<std::string> ids;
  for (const auto &q : questions)
    ids.insert(q.id);
  std::vector<Judgment> kept;
  for (const auto &j : qrels.judgments())
    if (ids.contains(j.question_id))
      kept.push_back(j);
  return Qrels(std::move(kept));
}

std::unique_ptr<TranslationProvider> make_translator(const Manifest &m) {
  if (m.provider == "echo")
    return std::make_unique<EchoTranslationProvider>();
  if (m.provider_url.empty())
    throw UsageError("--provider remote needs --provider-url or "
                     "AYAH_PROVIDER_URL");
  return std::make_unique<HttpProvider>(m.provider_url, m.provider_key);
}

std::unique_ptr<ParaphraseProvider> make_paraphraser(const Manifest &m) {
  if (m.provider == "echo")
    return std::make_unique<EchoParaphraseProvider>();
  if (m.provider_url.empty())
    throw UsageError("--provider remote needs --provider-url or "
                     "AYAH_PROVIDER_URL");
  return std::make_unique<HttpProvider>(m.provider_url, m.provider_key);
}

std::unique_ptr<TranslationCache> make_cache(const Manifest &m) {
  if (m.cache.empty())
    return std::make_unique<TranslationCache>();
  return std::make_unique<TranslationCache>(m.cache);
}

std::unique_ptr<Scorer> make_scorer(const Manifest &m, const Corpus &corpus) {
  if (m.scorer == "lexical")
    return std::make_unique<LexicalScorer>(corpus, Bm25Params{m.k1, m.b});
  if (m.scorer == "fixture") {
    if (m.fixture.empty())
      throw UsageError("--scorer fixture needs --fixture");
    return std::make_unique<FixtureScorer>(
        FixtureScorer::from_run(read_run(m.fixture)));
  }
  if (m.endpoint.empty())
    throw UsageError("--scorer remote needs --endpoint or AYAH_ENDPOINT");
  return std::make_unique<RemoteScorer>(m.endpoint);
}

Threshold parse_threshold(const std::string &s) {
  try {
    return Threshold::parse(s);
  } catch (const PreconditionError &e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_ingest(Context &ctx, const std::string &out_questions,
               const std::string &out_qrels) {
  const auto &m = ctx.m;
  Corpus corpus = load_corpus(m.corpus_ar, m.corpus_en);
  auto questions = load_questions(m.questions);
  Qrels qrels = load_judgments(m.qrels);

  for (auto &q : questions)
    q = standardize_question(q);
  if (!m.exclude.empty()) {
    auto filtered = apply_exclusions(questions, qrels, load_exclusion_list(m.exclude));
    for (const auto &id : filtered.dropped)
      ctx.out << "excluded: " << id << "\n";
    questions = std::move(filtered.questions);
    qrels = std::move(filtered.qrels);
  }
  auto deduped = dedupe_questions(questions);
  if (!deduped.dropped.empty()) {
    for (const auto &id : deduped.dropped)
      ctx.out << "duplicate dropped: " << id << "\n";
    auto filtered = apply_exclusions(deduped.questions, qrels, deduped.dropped);
    qrels = std::move(filtered.qrels);
  }
  questions = std::move(deduped.questions);

  auto report = validate_dataset(questions, qrels, corpus);
  for (const auto &v : report.violations)
    ctx.err << "violation: " << v.message << "\n";
  if (!report.ok()) {
    ctx.err << report.violations.size()
            << " violation(s); nothing written\n";
    return kExitDataError;
  }
  write_questions(questions, out_questions);
  write_judgments(qrels, out_qrels);
  std::map<std::string, std::string> inputs{{"corpus_ar", m.corpus_ar},
                                            {"corpus_en", m.corpus_en},
                                            {"questions", m.questions},
                                            {"qrels", m.qrels},
                                            {"exclude", m.exclude}};
  write_metadata(ctx, out_questions, "ingest", inputs);
  write_metadata(ctx, out_qrels, "ingest", inputs);
  ctx.out << "ingested " << questions.size() << " questions, "
          << qrels.size() << " judgments, " << corpus.size()
          << " passages\n";
  return kExitOk;
}

int cmd_translate(Context &ctx, const std::string &out_path) {
  const auto &m = ctx.m;
  auto questions = load_questions(m.questions);
  auto provider = make_translator(m);
  auto cache = make_cache(m);
  AugmentOptions options;
  options.max_in_flight = m.parallel;
  std::size_t pending = 0;
  for (const auto &q : questions)
    pending += q.text_en ? 0 : 1;
  auto translated = translate_questions(questions, *provider, *cache, options);
  write_questions(translated, out_path);
  write_metadata(ctx, out_path, "translate", {{"questions", m.questions}},
                 {{"provider", provider->provider_id()},
                  {"src", std::string(kArabic)},
                  {"tgt", std::string(kEnglish)}});
  ctx.out << "translated " << pending << " of " << questions.size()
          << " questions\n";
  return kExitOk;
}

int cmd_expand(Context &ctx, std::size_t n, const std::string &out_questions,
               const std::string &out_qrels) {
  const auto &m = ctx.m;
  auto questions = load_questions(m.questions);
  Qrels qrels = load_judgments(m.qrels);
  auto paraphraser = make_paraphraser(m);
  auto translator = make_translator(m);
  auto cache = make_cache(m);
  AugmentOptions options;
  options.max_in_flight = m.parallel;
  auto expansion = paraphrase_and_expand(questions, qrels, *paraphraser, n,
                                         *cache, options, translator.get());
  write_questions(expansion.questions, out_questions);
  write_judgments(expansion.qrels, out_qrels);
  ordered_json notes{{"paraphrase_provider", paraphraser->provider_id()},
                     {"translation_provider", translator->provider_id()},
                     {"paraphrases_per_question", n},
                     {"paraphrase_language", std::string(kArabic)},
                     {"order", "paraphrase in source language, then translate "
                               "every variant"}};
  std::map<std::string, std::string> inputs{{"questions", m.questions},
                                            {"qrels", m.qrels}};
  write_metadata(ctx, out_questions, "expand", inputs, notes);
  write_metadata(ctx, out_qrels, "expand", inputs, notes);
  ctx.out << "expanded " << questions.size() << " questions to "
          << expansion.questions.size() << " (" << qrels.size() << " -> "
          << expansion.qrels.size() << " judgments)\n";
  return kExitOk;
}

int cmd_build_pairs(Context &ctx, double neg_ratio, const std::string &strategy,
                    const std::string &split, const std::string &out_path) {
  const auto &m = ctx.m;
  Corpus corpus = load_corpus(m.corpus_ar, m.corpus_en);
  auto questions = select_split(load_questions(m.questions), split);
  Qrels qrels = load_judgments(m.qrels);
  SamplingConfig cfg;
  cfg.neg_ratio = neg_ratio;
  cfg.seed = m.seed;
  cfg.strategy = *negative_strategy_from_token(strategy);
  auto built = build_pairs(questions, corpus, qrels, cfg);
  for (const auto &qid : built.short_pools)
    ctx.err << "warning: insufficient negative pool for question " << qid
            << "\n";
  export_pairs(built.pairs, questions, corpus, out_path);
  write_metadata(ctx, out_path, "build-pairs",
                 {{"corpus_ar", m.corpus_ar},
                  {"corpus_en", m.corpus_en},
                  {"questions", m.questions},
                  {"qrels", m.qrels}},
                 {{"neg_ratio", neg_ratio},
                  {"strategy", strategy},
                  {"split", split.empty() ? "all" : split},
                  {"prng", "pcg32 keyed per question id"}});
  ctx.out << "wrote " << built.pairs.size() << " pairs for "
          << questions.size() << " questions\n";
  return kExitOk;
}

int cmd_retrieve(Context &ctx, const std::string &split,
                 const std::string &out_path) {
  const auto &m = ctx.m;
  Corpus corpus = load_corpus(m.corpus_ar, m.corpus_en);
  auto questions = select_split(load_questions(m.questions), split);
  RetrieveOptions options;
  options.k = m.k;
  options.threshold = parse_threshold(m.threshold);
  options.tag = m.tag;
  options.jobs = m.jobs;
  auto scorer = make_scorer(m, corpus);
  auto run = retrieve(questions, corpus, *scorer, options);
  write_run(run, out_path);
  ordered_json notes{{"scorer", scorer->name()},
                     {"split", split.empty() ? "all" : split}};
  if (m.scorer == "lexical")
    notes["bm25"] = {{"k1", m.k1}, {"b", m.b}};
  if (m.scorer == "remote")
    notes["endpoint"] = m.endpoint;
  write_metadata(ctx, out_path, "retrieve",
                 {{"corpus_ar", m.corpus_ar},
                  {"corpus_en", m.corpus_en},
                  {"questions", m.questions},
                  {"fixture", m.fixture}},
                 notes);
  std::size_t empty = 0;
  for (const auto &q : run.questions)
    empty += q.entries.empty() ? 1 : 0;
  ctx.out << "ranked " << run.questions.size() << " questions ("
          << empty << " no-answer)\n";
  return kExitOk;
}

int cmd_tune(Context &ctx, const std::string &grid_spec,
             const std::string &split, const std::string &out_path) {
  const auto &m = ctx.m;
  std::vector<double> grid;
  for (auto field : text::split(grid_spec, ',')) {
    auto t = text::trim(field);
    if (t.empty())
      continue;
    auto th = parse_threshold(std::string(t));
    if (th.is_none())
      throw UsageError("--grid values must be reals");
    grid.push_back(*th.tau);
  }
  if (grid.empty())
    throw UsageError("--grid is empty");
  Corpus corpus = load_corpus(m.corpus_ar, m.corpus_en);
  auto questions = select_split(load_questions(m.questions), split);
  Qrels qrels = load_judgments(m.qrels);
  auto scorer = make_scorer(m, corpus);
  std::size_t zero = 0;
  for (const auto &q : questions)
    zero += q.qtype == QuestionType::Zero ? 1 : 0;
  if (zero == 0 || zero == questions.size())
    ctx.err << "warning: tuning set should hold both zero-answer and "
               "answerable questions\n";
  auto result = tune_threshold(questions, qrels, corpus, *scorer, grid);
  for (const auto &[tau, map] : result.grid_scores) {
    char line[96];
    std::snprintf(line, sizeof line, "tau %-12g MAP10 %.6f\n", tau, map);
    ctx.out << line;
  }
  ctx.out << "best threshold: " << result.best.str() << "\n";
  if (!out_path.empty()) {
    ordered_json j;
    j["best"] = *result.best.tau;
    j["split"] = split;
    j["scorer"] = scorer->name();
    j["grid"] = ordered_json::array();
    for (const auto &[tau, map] : result.grid_scores)
      j["grid"].push_back({{"tau", tau}, {"map10", map}});
    io::write_file_atomic(out_path, j.dump(2) + "\n");
    write_metadata(ctx, out_path, "tune-threshold",
                   {{"corpus_ar", m.corpus_ar},
                    {"corpus_en", m.corpus_en},
                    {"questions", m.questions},
                    {"qrels", m.qrels}});
  }
  return kExitOk;
}

int cmd_evaluate(Context &ctx, const std::string &run_path,
                 const std::string &split, const std::string &json_path) {
  const auto &m = ctx.m;
  auto questions = select_split(load_questions(m.questions), split);
  Qrels qrels = select_judgments(load_judgments(m.qrels), questions);
  auto run = read_run(run_path);
  auto report = evaluate(run, qrels, questions);
  ctx.out << render_report(report);
  if (!json_path.empty()) {
    io::write_file_atomic(json_path, report_to_json(report));
    write_metadata(ctx, json_path, "evaluate",
                   {{"run", run_path},
                    {"questions", m.questions},
                    {"qrels", m.qrels}});
  }
  return kExitOk;
}

int cmd_compare(Context &ctx, const std::string &base_path,
                const std::string &ours_path, const std::string &split,
                const std::string &json_path, int decimals) {
  const auto &m = ctx.m;
  auto questions = select_split(load_questions(m.questions), split);
  Qrels qrels = select_judgments(load_judgments(m.qrels), questions);
  auto base = evaluate(read_run(base_path), qrels, questions);
  auto ours = evaluate(read_run(ours_path), qrels, questions);
  auto cmp = compare_runs(base, ours);
  ctx.out << render_comparison(cmp, decimals);
  if (!json_path.empty()) {
    io::write_file_atomic(json_path, comparison_to_json(cmp));
    write_metadata(ctx, json_path, "compare",
                   {{"base", base_path},
                    {"ours", ours_path},
                    {"questions", m.questions},
                    {"qrels", m.qrels}});
  }
  return kExitOk;
}

int cmd_stats(Context &ctx) {
  const auto &m = ctx.m;
  auto questions = load_questions(m.questions);
  Qrels qrels = m.qrels.empty() ? Qrels{} : load_judgments(m.qrels);
  auto stats = compute_stats(questions, qrels);
  auto &out = ctx.out;
  out << "questions: " << stats.total_questions << "\n";
  out << "split:";
  for (auto s : kSplits)
    out << " " << to_token(s) << "=" << stats.per_split.at(s);
  out << "\nqtype:";
  for (auto t : kQuestionTypes)
    out << " " << to_token(t) << "=" << stats.per_qtype.at(t);
  out << "\nsource:";
  for (auto s : kSources)
    out << " " << to_token(s) << "=" << stats.per_source.at(s);
  out << "\npositive judgments: " << stats.total_positive_judgments << "\n";

  std::map<std::string, std::size_t> per_parent;
  for (const auto &q : questions)
    if (q.parent_id)
      ++per_parent[*q.parent_id];
  const std::size_t base = stats.total_questions -
                           stats.per_source.at(Source::Paraphrase);
  std::size_t max_n = 0;
  for (const auto &[parent, count] : per_parent)
    max_n = std::max(max_n, count);
  out << "expansion: " << base << " base questions, "
      << stats.per_source.at(Source::Paraphrase) << " paraphrases";
  if (max_n > 0)
    out << " (up to " << max_n << " per base question; base x (1 + " << max_n
        << ") = " << base * (1 + max_n) << ")";
  out << "\n" << kExpansionNote << "\n";
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Cross-language passage retrieval pipeline and evaluation "
               "harness for Quranic question answering.",
               "ayah"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Context ctx{Manifest{}, out, err};
  Manifest &m = ctx.m;

  app.add_flag("--deterministic", m.deterministic,
               "Omit wall-clock data from artifact metadata")
      ->envname("AYAH_DETERMINISTIC");
  app.add_option("--seed", m.seed, "Seed for every randomized step")
      ->envname("AYAH_SEED")
      ->capture_default_str();

  auto corpus_opts = [&](CLI::App *sub) {
    sub->add_option("--corpus-ar", m.corpus_ar, "Arabic corpus TSV")
        ->required()
        ->check(CLI::ExistingFile)
        ->envname("AYAH_CORPUS_AR");
    sub->add_option("--corpus-en", m.corpus_en, "English corpus TSV")
        ->required()
        ->check(CLI::ExistingFile)
        ->envname("AYAH_CORPUS_EN");
  };
  auto question_opt = [&](CLI::App *sub) {
    sub->add_option("--questions", m.questions, "Questions JSONL")
        ->required()
        ->check(CLI::ExistingFile)
        ->envname("AYAH_QUESTIONS");
  };
  auto qrels_opt = [&](CLI::App *sub, bool required) {
    auto *o = sub->add_option("--qrels", m.qrels, "Relevance judgments")
                  ->check(CLI::ExistingFile)
                  ->envname("AYAH_QRELS");
    if (required)
      o->required();
  };
  auto provider_opts = [&](CLI::App *sub) {
    sub->add_option("--provider", m.provider, "Provider: echo|remote")
        ->check(CLI::IsMember({"echo", "remote"}))
        ->envname("AYAH_PROVIDER")
        ->capture_default_str();
    sub->add_option("--provider-url", m.provider_url, "Remote provider URL")
        ->envname("AYAH_PROVIDER_URL");
    sub->add_option("--provider-key", m.provider_key, "Remote provider key")
        ->envname("AYAH_PROVIDER_KEY");
    sub->add_option("--cache", m.cache, "Provider cache JSONL (append-only)")
        ->envname("AYAH_CACHE");
    sub->add_option("--parallel", m.parallel, "Provider calls in flight")
        ->check(CLI::PositiveNumber)
        ->envname("AYAH_PARALLEL")
        ->capture_default_str();
  };
  auto scorer_opts = [&](CLI::App *sub) {
    sub->add_option("--scorer", m.scorer, "Scorer: lexical|remote|fixture")
        ->check(CLI::IsMember({"lexical", "remote", "fixture"}))
        ->envname("AYAH_SCORER")
        ->capture_default_str();
    sub->add_option("--fixture", m.fixture, "Run file replayed as scores")
        ->check(CLI::ExistingFile)
        ->envname("AYAH_FIXTURE");
    sub->add_option("--endpoint", m.endpoint, "Cross-encoder sidecar URL")
        ->envname("AYAH_ENDPOINT");
    sub->add_option("--k1", m.k1, "BM25 k1")
        ->check(CLI::PositiveNumber)
        ->envname("AYAH_K1")
        ->capture_default_str();
    sub->add_option("--b", m.b, "BM25 b")
        ->check(CLI::Range(0.0, 1.0))
        ->envname("AYAH_B")
        ->capture_default_str();
  };
  const auto split_check = CLI::IsMember({"train", "dev", "test"});

  std::string out_questions, out_qrels, out_path, split, grid = "0,0.5,1,2,4,8";
  std::string strategy = "uniform", run_path, base_path, ours_path, json_path;
  std::size_t paraphrases = 2;
  double neg_ratio = 2.0;
  int decimals = 2;

  auto *ingest = app.add_subcommand(
      "ingest", "Standardize, de-duplicate, filter and validate a dataset");
  corpus_opts(ingest);
  question_opt(ingest);
  qrels_opt(ingest, true);
  ingest->add_option("--exclude", m.exclude, "Question ids to drop")
      ->check(CLI::ExistingFile)
      ->envname("AYAH_EXCLUDE");
  ingest->add_option("--out-questions", out_questions)->required();
  ingest->add_option("--out-qrels", out_qrels)->required();

  auto *translate = app.add_subcommand(
      "translate", "Fill missing English question text via a provider");
  question_opt(translate);
  provider_opts(translate);
  translate->add_option("--out", out_path)->required();

  auto *expand = app.add_subcommand(
      "expand", "Add paraphrases per question and replicate judgments");
  question_opt(expand);
  qrels_opt(expand, true);
  provider_opts(expand);
  expand->add_option("--n", paraphrases, "Paraphrases per question")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expand->add_option("--out-questions", out_questions)->required();
  expand->add_option("--out-qrels", out_qrels)->required();

  auto *pairs = app.add_subcommand(
      "build-pairs", "Build seeded positive/negative training pairs");
  corpus_opts(pairs);
  question_opt(pairs);
  qrels_opt(pairs, true);
  pairs->add_option("--neg-ratio", neg_ratio, "Negatives per positive")
      ->check(CLI::NonNegativeNumber)
      ->envname("AYAH_NEG_RATIO")
      ->capture_default_str();
  pairs->add_option("--strategy", strategy, "uniform|lexical-hard")
      ->check(CLI::IsMember({"uniform", "lexical-hard"}))
      ->envname("AYAH_STRATEGY")
      ->capture_default_str();
  pairs->add_option("--split", split, "Restrict to one split")
      ->check(split_check);
  pairs->add_option("--out", out_path)->required();

  auto *retrieve_cmd = app.add_subcommand(
      "retrieve", "Rank corpus passages per question into a run file");
  corpus_opts(retrieve_cmd);
  question_opt(retrieve_cmd);
  scorer_opts(retrieve_cmd);
  retrieve_cmd->add_option("--k", m.k, "Passages kept per question")
      ->check(CLI::PositiveNumber)
      ->envname("AYAH_K")
      ->capture_default_str();
  retrieve_cmd->add_option("--threshold", m.threshold, "Score floor or none")
      ->envname("AYAH_THRESHOLD")
      ->capture_default_str();
  retrieve_cmd->add_option("--tag", m.tag, "Run tag")
      ->envname("AYAH_TAG")
      ->capture_default_str();
  retrieve_cmd->add_option("--jobs", m.jobs, "Questions ranked concurrently")
      ->check(CLI::PositiveNumber)
      ->envname("AYAH_JOBS")
      ->capture_default_str();
  retrieve_cmd->add_option("--split", split, "Restrict to one split")
      ->check(split_check);
  retrieve_cmd->add_option("--out", out_path)->required();

  auto *tune = app.add_subcommand(
      "tune-threshold", "Choose the no-answer threshold maximizing MAP@10");
  corpus_opts(tune);
  question_opt(tune);
  qrels_opt(tune, true);
  scorer_opts(tune);
  tune->add_option("--grid", grid, "Comma-separated candidate thresholds")
      ->capture_default_str();
  split = "";
  tune->add_option("--split", split, "Tuning split (default dev)")
      ->check(split_check);
  tune->add_option("--out", out_path, "Write the result as JSON");

  auto *evaluate_cmd = app.add_subcommand(
      "evaluate", "MAP@10, MRR, Recall@5/10 and Precision@5/10 of a run");
  evaluate_cmd->add_option("--run", run_path)
      ->required()
      ->check(CLI::ExistingFile);
  question_opt(evaluate_cmd);
  qrels_opt(evaluate_cmd, true);
  evaluate_cmd->add_option("--split", split, "Score only this split")
      ->check(split_check);
  evaluate_cmd->add_option("--json", json_path, "Write the report as JSON");

  auto *compare = app.add_subcommand("compare",
                                     "Base-vs-Ours table for two runs");
  compare->add_option("--base", base_path)
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--ours", ours_path)
      ->required()
      ->check(CLI::ExistingFile);
  question_opt(compare);
  qrels_opt(compare, true);
  compare->add_option("--split", split, "Score only this split")
      ->check(split_check);
  compare->add_option("--json", json_path, "Write the comparison as JSON");
  compare->add_option("--decimals", decimals, "Decimals in the table")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();

  auto *stats = app.add_subcommand("stats", "Counts per split, type and source");
  question_opt(stats);
  qrels_opt(stats, false);

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1),
                                     args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*ingest)
      return cmd_ingest(ctx, out_questions, out_qrels);
    if (*translate)
      return cmd_translate(ctx, out_path);
    if (*expand)
      return cmd_expand(ctx, paraphrases, out_questions, out_qrels);
    if (*pairs)
      return cmd_build_pairs(ctx, neg_ratio, strategy, split, out_path);
    if (*retrieve_cmd)
      return cmd_retrieve(ctx, split, out_path);
    if (*tune)
      return cmd_tune(ctx, grid, split.empty() ? "dev" : split, out_path);
    if (*evaluate_cmd)
      return cmd_evaluate(ctx, run_path, split, json_path);
    if (*compare)
      return cmd_compare(ctx, base_path, ours_path, split, json_path, decimals);
    if (*stats)
      return cmd_stats(ctx);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  err << app.help();
  return kExitUsage;
}

} // namespace ayah::cli
