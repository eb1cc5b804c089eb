// classica - corpus building, tagging, lemmatization and evaluation for
// classical French texts.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
// stderr; data goes to files or stdout.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "classica/annotate.hpp"
#include "classica/corpus.hpp"
#include "classica/errors.hpp"
#include "classica/eval.hpp"
#include "classica/lemmatizer.hpp"
#include "classica/lexicon.hpp"
#include "classica/pipeline.hpp"
#include "classica/play.hpp"
#include "classica/sampling.hpp"
#include "classica/service.hpp"
#include "classica/tagger.hpp"
#include "classica/tagset.hpp"
#include "classica/text.hpp"

namespace fs = std::filesystem;
using namespace classica;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write file: " + path);
  out << content;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

// One-token-per-line files; blank lines separate segments.
std::vector<std::vector<std::string>> read_token_segments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open token file: " + path);
  std::vector<std::vector<std::string>> segments;
  std::vector<std::string> current;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.empty()) segments.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(line);
    }
  }
  if (!current.empty()) segments.push_back(std::move(current));
  return segments;
}

Corpus read_corpora(const std::vector<std::string>& paths) {
  Corpus all;
  for (const auto& p : paths) {
    Corpus c = read_corpus(p);
    for (auto& s : c.sentences) all.sentences.push_back(std::move(s));
  }
  return all;
}

std::vector<std::string> list_tsv_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw error("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".tsv")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

// --- Normalization policy flags -----------------------------------------------

struct NormFlags {
  bool no_ligatures = false;
  bool no_apostrophes = false;
  bool no_compose = false;
  std::string oe_words;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--no-ligatures", no_ligatures,
                  "Do not compose oe into the œ ligature");
    cmd->add_flag("--no-apostrophe-unify", no_apostrophes,
                  "Keep U+2019 apostrophes as they are");
    cmd->add_flag("--no-compose", no_compose,
                  "Do not compose combining diacritics");
    cmd->add_option("--oe-words", oe_words,
                    "Word list for ligature composition (one œ-word per line)");
  }

  NormalizationPolicy policy() const {
    NormalizationPolicy p;
    p.compose_ligatures = !no_ligatures;
    p.unify_apostrophes = !no_apostrophes;
    p.compose_diacritics = !no_compose;
    if (!oe_words.empty())
      p.set_ligature_words(NormalizationPolicy::load_wordlist(oe_words));
    return p;
  }
};

// --- Model resolution -----------------------------------------------------------

struct ModelFlags {
  std::string tagger;
  std::string lemmatizer;
  std::string lexicon;
  std::string names;
  bool use_aux = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tagger", tagger, "Tagger model file");
    cmd->add_option("--lemmatizer", lemmatizer, "Lemmatizer model file");
    cmd->add_option("--lexicon", lexicon, "Lexicon TSV");
    cmd->add_option("--names", names, "Proper-name list");
    cmd->add_flag("--use-aux", use_aux,
                  "Take morphology from the tagger's auxiliary classifiers");
  }

  // Unset paths fall back to well-known names under $CLASSICA_MODELS.
  void resolve() {
    const char* env = std::getenv("CLASSICA_MODELS");
    if (!env || !*env) return;
    fs::path dir(env);
    auto fallback = [&](std::string& slot, const char* name) {
      if (slot.empty() && fs::exists(dir / name)) slot = (dir / name).string();
    };
    fallback(tagger, "tagger.model");
    fallback(lemmatizer, "lemmatizer.model");
    fallback(lexicon, "lexicon.tsv");
    fallback(names, "names.txt");
  }
};

struct LoadedModels {
  std::unique_ptr<TaggerModel> tagger;
  std::unique_ptr<LemmatizerModel> lemmatizer;
  std::unique_ptr<Lexicon> lexicon;
};

LoadedModels load_models(ModelFlags& flags, bool tagger_required) {
  flags.resolve();
  LoadedModels m;
  if (flags.tagger.empty() && tagger_required)
    throw error("no tagger model (use --tagger or set CLASSICA_MODELS)");
  if (!flags.tagger.empty())
    m.tagger = std::make_unique<TaggerModel>(TaggerModel::load(flags.tagger));
  if (!flags.lexicon.empty())
    m.lexicon = std::make_unique<Lexicon>(Lexicon::load(flags.lexicon));
  if (!flags.names.empty()) {
    if (!m.lexicon) m.lexicon = std::make_unique<Lexicon>();
    m.lexicon->load_names(flags.names);
  }
  if (!flags.lemmatizer.empty()) {
    m.lemmatizer =
        std::make_unique<LemmatizerModel>(LemmatizerModel::load(flags.lemmatizer));
    m.lemmatizer->attach_lexicon(m.lexicon.get());
  }
  return m;
}

// --- ingest -------------------------------------------------------------------

struct IngestOpts {
  std::string in;
  std::string out = "-";
  std::string id;
  std::vector<std::string> speech_elements;
  std::vector<std::string> excluded_elements;
  bool tsv = false;
  NormFlags norm;
};

void run_ingest(const IngestOpts& o) {
  IngestConfig config;
  if (!o.speech_elements.empty())
    config.speech_elements = {o.speech_elements.begin(), o.speech_elements.end()};
  if (!o.excluded_elements.empty())
    config.excluded_elements = {o.excluded_elements.begin(),
                                o.excluded_elements.end()};

  Play play = parse_play(read_file(o.in), config);
  if (!o.id.empty())
    play.id = o.id;
  else if (play.id.empty())
    play.id = stem_of(o.in);

  auto tokens = play_tokens(play, o.norm.policy());

  std::ostringstream out;
  if (o.tsv) {
    Corpus corpus;
    Sentence current;
    size_t speech = 0;
    for (const auto& t : tokens) {
      if (t.speech != speech && !current.empty()) {
        corpus.sentences.push_back(std::move(current));
        current.clear();
      }
      speech = t.speech;
      AnnotatedToken tok;
      tok.form = t.text;
      tok.morph = std::nullopt;
      current.push_back(std::move(tok));
    }
    if (!current.empty()) corpus.sentences.push_back(std::move(current));
    write_corpus(corpus, out);
  } else {
    size_t speech = 0;
    bool first = true;
    for (const auto& t : tokens) {
      if (!first && t.speech != speech) out << '\n';
      speech = t.speech;
      out << t.text << '\n';
      first = false;
    }
  }
  write_file(o.out, out.str());
  std::cerr << play.id << ": " << play.speeches.size() << " speeches, "
            << tokens.size() << " tokens\n";
}

// --- normalize ----------------------------------------------------------------

struct NormalizeOpts {
  std::string in;
  std::string out = "-";
  NormFlags norm;
};

void run_normalize(const NormalizeOpts& o) {
  write_file(o.out, normalize_chars(read_file(o.in), o.norm.policy()));
}

// --- sample -------------------------------------------------------------------

struct SampleOpts {
  std::vector<std::string> tokens;
  std::string metadata;
  std::string out_dir;
  size_t train_n = 2000;
  size_t dev_n = 100;
  size_t test_n = 100;
};

Corpus slice_segments(const std::vector<std::vector<std::string>>& segments,
                      const TokenRange& range) {
  Corpus corpus;
  size_t index = 0;
  for (const auto& segment : segments) {
    Sentence sentence;
    for (const auto& form : segment) {
      if (index >= range.begin && index < range.end) {
        AnnotatedToken tok;
        tok.form = form;
        tok.morph = std::nullopt;
        sentence.push_back(std::move(tok));
      }
      ++index;
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

void run_sample(const SampleOpts& o) {
  auto metadata = read_metadata_csv(o.metadata);
  fs::create_directories(o.out_dir);
  for (const auto& path : o.tokens) {
    std::string id = stem_of(path);
    if (!metadata.count(id))
      throw error("play '" + id + "' not found in metadata CSV " + o.metadata);
    auto segments = read_token_segments(path);
    size_t total = 0;
    for (const auto& s : segments) total += s.size();
    Split split;
    try {
      split = three_tier_split(total, o.train_n, o.dev_n, o.test_n);
    } catch (const split_error& e) {
      throw split_error("play '" + id + "': " + e.what());
    }
    split.play_id = id;
    fs::path base = fs::path(o.out_dir) / id;
    write_corpus(slice_segments(segments, split.train), base.string() + ".train.tsv");
    write_corpus(slice_segments(segments, split.dev), base.string() + ".dev.tsv");
    write_corpus(slice_segments(segments, split.test), base.string() + ".test.tsv");
    std::cerr << id << ": " << total << " tokens -> train [" << split.train.begin
              << "," << split.train.end << "), dev [" << split.dev.begin << ","
              << split.dev.end << "), test [" << split.test.begin << ","
              << split.test.end << ")\n";
  }
}

// --- project -------------------------------------------------------------------

struct ProjectOpts {
  std::string in;
  std::string out = "-";
  std::string lexicon;
  std::string names;
  std::string rules;
  bool no_rules = false;
  std::string pos_map;
  std::string flexion_map;
};

void run_project(const ProjectOpts& o) {
  const TagMaps* maps = &TagMaps::builtin();
  std::optional<TagMaps> loaded_maps;
  if (!o.pos_map.empty() || !o.flexion_map.empty()) {
    if (o.pos_map.empty() || o.flexion_map.empty())
      throw error("--pos-map and --flexion-map must be given together");
    loaded_maps = TagMaps::load(o.pos_map, o.flexion_map);
    maps = &*loaded_maps;
  }

  Lexicon lexicon = Lexicon::load(o.lexicon, *maps);
  if (!o.names.empty()) lexicon.load_names(o.names);

  Corpus corpus = read_corpus(o.in);
  if (!o.no_rules) {
    LemmaRuleSet loaded_rules;
    const LemmaRuleSet* rules = &LemmaRuleSet::defaults();
    if (!o.rules.empty()) {
      loaded_rules = LemmaRuleSet::load(o.rules);
      rules = &loaded_rules;
    }
    corpus = rules->apply(std::move(corpus));
  }

  std::vector<ProjectionNote> notes;
  corpus = project_morphology(std::move(corpus), lexicon, *maps, &notes);
  for (const auto& note : notes)
    std::cerr << "note: " << note.form << ": " << note.message << '\n';

  std::ostringstream out;
  write_corpus(corpus, out);
  write_file(o.out, out.str());
}

// --- train-tagger ----------------------------------------------------------------

struct TrainTaggerOpts {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::string out;
  TaggerConfig config;
  bool aux = false;
};

void run_train_tagger(const TrainTaggerOpts& o) {
  Corpus train = read_corpora(o.train);
  Corpus dev = read_corpora(o.dev);
  TrainLog log;
  TaggerModel model = train_tagger(train, dev, o.config, &log);
  for (const auto& w : log.warnings) std::cerr << "warning: " << w << '\n';
  for (size_t e = 0; e < log.dev_accuracy.size(); ++e) {
    std::ostringstream acc;
    acc.precision(6);
    acc << std::fixed << log.dev_accuracy[e];
    std::cerr << "epoch " << (e + 1) << ": dev accuracy " << acc.str() << '\n';
  }
  std::cerr << "best model: seed " << log.winning_seed << ", " << log.epochs_run
            << " epochs\n";
  if (o.aux) {
    std::vector<std::string> warnings;
    MorphClassifiers aux = train_morph_aux(train, o.config, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    model.set_aux(std::move(aux));
  }
  model.save(o.out);
  std::cerr << "model written to " << o.out << '\n';
}

// --- train-lemmatizer --------------------------------------------------------------

struct TrainLemmatizerOpts {
  std::vector<std::string> train;
  std::string out;
  size_t max_suffix = 6;
};

void run_train_lemmatizer(const TrainLemmatizerOpts& o) {
  Corpus train = read_corpora(o.train);
  if (train.token_count() == 0) throw error("empty training corpus");
  LemmatizerConfig config;
  config.max_suffix = o.max_suffix;
  LemmatizerModel model = LemmatizerModel::train(train, config);
  model.save(o.out);
  std::cerr << "model written to " << o.out << " (" << model.rule_count()
            << " suffix keys)\n";
}

// --- tag ----------------------------------------------------------------------------

struct TagOpts {
  std::string in;
  std::string out = "-";
  ModelFlags models;
  NormFlags norm;
};

void run_tag(TagOpts& o) {
  LoadedModels models = load_models(o.models, true);
  AnnotationPipeline pipeline;
  pipeline.tagger = models.tagger.get();
  pipeline.lemmatizer = models.lemmatizer.get();
  pipeline.lexicon = models.lexicon.get();
  pipeline.normalization = o.norm.policy();
  pipeline.morph_from_aux = o.models.use_aux;

  std::string text = read_file(o.in);
  if (!valid_utf8(text)) throw error("input is not valid UTF-8: " + o.in);
  Corpus corpus = pipeline.annotate_text(text);
  std::ostringstream out;
  write_corpus(corpus, out);
  write_file(o.out, out.str());
}

// --- lemmatize ----------------------------------------------------------------------

struct LemmatizeOpts {
  std::string in;
  std::string out = "-";
  ModelFlags models;
};

void run_lemmatize(LemmatizeOpts& o) {
  o.models.resolve();
  if (o.models.lemmatizer.empty())
    throw error("no lemmatizer model (use --lemmatizer or set CLASSICA_MODELS)");
  LoadedModels models = load_models(o.models, false);
  Corpus corpus = read_corpus(o.in);
  for (auto& sentence : corpus.sentences)
    for (auto& token : sentence)
      token.lemma = models.lemmatizer->lemmatize(token.form, token.pos);
  std::ostringstream out;
  write_corpus(corpus, out);
  write_file(o.out, out.str());
}

// --- eval / confusions ---------------------------------------------------------------

struct EvalOpts {
  std::string task = "lemma";
  std::vector<std::string> train;
  std::string gold;
  std::string pred;
  std::string baseline_pred;
  std::string metadata;
  std::string group;
  size_t confusions = 0;
  std::string out = "-";
  std::string json;
};

std::vector<GroupedSample> collect_samples(
    const std::string& gold_dir, const std::string& pred_dir,
    const std::map<std::string, PlayMetadata>& metadata) {
  std::vector<GroupedSample> samples;
  for (const auto& gold_path : list_tsv_files(gold_dir)) {
    std::string id = stem_of(gold_path);
    fs::path pred_path = fs::path(pred_dir) / (id + ".tsv");
    if (!fs::exists(pred_path))
      throw error("missing prediction file for sample '" + id + "' in " + pred_dir);
    auto meta = metadata.find(id);
    if (meta == metadata.end())
      throw error("sample '" + id + "' not found in the metadata CSV");
    GroupedSample s;
    s.id = id;
    s.gold = read_corpus(gold_path);
    s.pred = read_corpus(pred_path.string());
    s.century = meta->second.century;
    s.channel = meta->second.channel;
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw error("no .tsv samples found in " + gold_dir);
  return samples;
}

Corpus pool_samples(const std::vector<GroupedSample>& samples, bool gold) {
  Corpus all;
  for (const auto& s : samples) {
    const Corpus& c = gold ? s.gold : s.pred;
    for (const auto& sentence : c.sentences) all.sentences.push_back(sentence);
  }
  return all;
}

void run_eval(const EvalOpts& o) {
  Task task = task_from_name(o.task);
  std::ostringstream text;
  std::ostringstream json;

  if (o.group.empty()) {
    Corpus gold = read_corpus(o.gold);
    Corpus pred = read_corpus(o.pred);
    TokenClassIndex classes;
    if (!o.train.empty()) {
      Corpus train = read_corpora(o.train);
      classes = classify_tokens(train, gold, task);
    } else {
      classes.task = task;
      classes.flags.assign(gold.token_count(), TokenClass{});
    }
    EvalReport report = accuracy_report(gold, pred, classes, task);
    if (o.train.empty()) {
      // Without training data the token classes are undefined.
      report.unknown_tokens = {};
      report.ambiguous_tokens = {};
      report.unknown_targets = {};
    }
    text << render_report(report);
    json << report_records(report);
    if (o.confusions > 0) {
      auto conf = confusion_matrix(gold, pred, task, o.confusions);
      text << '\n' << render_confusions(conf, task);
      json << confusion_records(conf, task);
    }
  } else {
    if (o.group != "century,channel" && o.group != "channel,century")
      throw error("unsupported --group '" + o.group +
                  "' (supported axes: century,channel)");
    if (o.metadata.empty()) throw error("--group requires --metadata");
    auto metadata = read_metadata_csv(o.metadata);
    auto samples = collect_samples(o.gold, o.pred, metadata);
    GroupedReport grouped = grouped_report(samples, task);
    text << render_grouped(grouped);
    json << grouped_records(grouped);

    if (!o.baseline_pred.empty()) {
      auto baseline = collect_samples(o.gold, o.baseline_pred, metadata);
      GroupedReport base_report = grouped_report(baseline, task);
      DeltaReport delta = delta_report(base_report, grouped);
      text << '\n' << "improvement over baseline\n" << render_delta(delta);
      json << delta_records(delta);
    }

    if (!o.train.empty()) {
      Corpus train = read_corpora(o.train);
      Corpus gold = pool_samples(samples, true);
      Corpus pred = pool_samples(samples, false);
      TokenClassIndex classes = classify_tokens(train, gold, task);
      EvalReport report = accuracy_report(gold, pred, classes, task);
      text << '\n' << render_report(report);
      json << report_records(report);
    }

    if (o.confusions > 0) {
      Corpus gold = pool_samples(samples, true);
      Corpus pred = pool_samples(samples, false);
      auto conf = confusion_matrix(gold, pred, task, o.confusions);
      text << '\n' << render_confusions(conf, task);
      json << confusion_records(conf, task);
    }
  }

  write_file(o.out, text.str());
  if (!o.json.empty()) write_file(o.json, json.str());
}

struct ConfusionsOpts {
  std::string task = "lemma";
  std::string gold;
  std::string pred;
  size_t top = 15;
  std::string out = "-";
  std::string json;
};

void run_confusions(const ConfusionsOpts& o) {
  Task task = task_from_name(o.task);
  Corpus gold = read_corpus(o.gold);
  Corpus pred = read_corpus(o.pred);
  auto conf = confusion_matrix(gold, pred, task, o.top);
  write_file(o.out, render_confusions(conf, task));
  if (!o.json.empty()) write_file(o.json, confusion_records(conf, task));
}

// --- validate-balance ------------------------------------------------------------------

struct BalanceOpts {
  std::string dir;
  std::string metadata;
  double tau_gender = 0.25;
  double tau_size = 0.25;
  int per_channel = 10;
  size_t sample_tokens = 100;
};

void run_validate_balance(const BalanceOpts& o) {
  auto metadata = read_metadata_csv(o.metadata);
  std::vector<BalanceSample> samples;
  for (const auto& path : list_tsv_files(o.dir)) {
    std::string id = stem_of(path);
    auto meta = metadata.find(id);
    if (meta == metadata.end())
      throw error("sample '" + id + "' not found in the metadata CSV");
    BalanceSample s;
    s.id = id;
    s.metadata = meta->second;
    s.token_count = read_corpus(path).token_count();
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw error("no .tsv samples found in " + o.dir);

  BalanceOptions options;
  options.tau_gender = o.tau_gender;
  options.tau_size = o.tau_size;
  options.samples_per_channel = o.per_channel;
  options.sample_tokens = o.sample_tokens;
  BalanceReport report = validate_balance(samples, options);

  for (const auto& [century, c] : report.centuries) {
    std::cout << "century " << century << ": " << c.theatre_samples
              << " theatre / " << c.other_samples << " other samples, tokens "
              << c.male_tokens << " male / " << c.female_tokens << " female";
    if (c.unknown_gender_tokens > 0)
      std::cout << " / " << c.unknown_gender_tokens << " unknown";
    std::cout << '\n';
  }
  if (report.ok()) {
    std::cout << "balance: ok\n";
    return;
  }
  for (const auto& v : report.violations) {
    std::cout << "violation: " << v.rule << " century " << v.century << ": "
              << v.detail << " (observed " << v.observed << ", expected "
              << v.expected << ", tolerance " << v.tolerance << ")\n";
  }
  throw error(std::to_string(report.violations.size()) + " balance violation(s)");
}

// --- serve --------------------------------------------------------------------------

struct ServeOpts {
  std::string host = "127.0.0.1";
  int port = 8080;
  size_t max_body = 1 << 20;
  ModelFlags models;
  NormFlags norm;
};

void run_serve(ServeOpts& o) {
  LoadedModels models = load_models(o.models, true);
  AnnotationPipeline pipeline;
  pipeline.tagger = models.tagger.get();
  pipeline.lemmatizer = models.lemmatizer.get();
  pipeline.lexicon = models.lexicon.get();
  pipeline.normalization = o.norm.policy();
  pipeline.morph_from_aux = o.models.use_aux;

  AnnotationService service(pipeline, o.max_body);
  std::cerr << "listening on http://" << o.host << ":" << o.port
            << " (POST /tag, GET /health)\n";
  if (!service.listen(o.host, o.port))
    throw error("cannot bind " + o.host + ":" + std::to_string(o.port));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus building, tagging, lemmatization and evaluation for "
               "classical French texts"};
  app.require_subcommand(1);

  auto ingest_opts = std::make_shared<IngestOpts>();
  auto* ingest = app.add_subcommand(
      "ingest", "Extract and tokenize character speech from a play");
  ingest->add_option("--in", ingest_opts->in, "Play document (TEI-style)")->required();
  ingest->add_option("--out", ingest_opts->out, "Output file (- = stdout)");
  ingest->add_option("--id", ingest_opts->id, "Play id (default: xml:id or file stem)");
  ingest->add_option("--speech-elements", ingest_opts->speech_elements,
                     "Speech element names (default: sp)");
  ingest->add_option("--exclude-elements", ingest_opts->excluded_elements,
                     "Elements dropped inside speech (default: speaker stage head note)");
  ingest->add_flag("--tsv", ingest_opts->tsv, "Write annotation TSV instead of tokens");
  ingest_opts->norm.attach(ingest);
  ingest->callback([ingest_opts] { run_ingest(*ingest_opts); });

  auto normalize_opts = std::make_shared<NormalizeOpts>();
  auto* normalize = app.add_subcommand("normalize", "Normalize characters in a text file");
  normalize->add_option("--in", normalize_opts->in, "Input text")->required();
  normalize->add_option("--out", normalize_opts->out, "Output file (- = stdout)");
  normalize_opts->norm.attach(normalize);
  normalize->callback([normalize_opts] { run_normalize(*normalize_opts); });

  auto sample_opts = std::make_shared<SampleOpts>();
  auto* sample = app.add_subcommand(
      "sample", "Cut plays into train/dev/test tiers (first 2000 / median 100 / last 100)");
  sample->add_option("--tokens", sample_opts->tokens, "One-token-per-line files")
      ->required();
  sample->add_option("--metadata", sample_opts->metadata, "Metadata CSV")->required();
  sample->add_option("--out-dir", sample_opts->out_dir, "Output directory")->required();
  sample->add_option("--train-n", sample_opts->train_n, "Training tier size");
  sample->add_option("--dev-n", sample_opts->dev_n, "Dev tier size");
  sample->add_option("--test-n", sample_opts->test_n, "Test tier size");
  sample->callback([sample_opts] { run_sample(*sample_opts); });

  auto project_opts = std::make_shared<ProjectOpts>();
  auto* project = app.add_subcommand(
      "project", "Apply lemma rules and project morphology from the lexicon");
  project->add_option("--in", project_opts->in, "Annotated TSV")->required();
  project->add_option("--out", project_opts->out, "Output TSV (- = stdout)");
  project->add_option("--lexicon", project_opts->lexicon, "Lexicon TSV")->required();
  project->add_option("--names", project_opts->names, "Proper-name list");
  project->add_option("--rules", project_opts->rules,
                      "Lemma rule file (default: built-in rules)");
  project->add_flag("--no-rules", project_opts->no_rules, "Skip lemma rules");
  project->add_option("--pos-map", project_opts->pos_map, "POS mapping TSV override");
  project->add_option("--flexion-map", project_opts->flexion_map,
                      "Flexion mapping TSV override");
  project->callback([project_opts] { run_project(*project_opts); });

  auto train_tagger_opts = std::make_shared<TrainTaggerOpts>();
  auto* train_tagger_cmd =
      app.add_subcommand("train-tagger", "Train the averaged-perceptron POS tagger");
  train_tagger_cmd->add_option("--train", train_tagger_opts->train, "Training TSVs")
      ->required();
  train_tagger_cmd->add_option("--dev", train_tagger_opts->dev, "Dev TSVs");
  train_tagger_cmd->add_option("--out", train_tagger_opts->out, "Model file")
      ->required();
  train_tagger_cmd->add_option("--seed", train_tagger_opts->config.seed, "Random seed");
  train_tagger_cmd->add_option("--epochs", train_tagger_opts->config.epochs,
                               "Maximum epochs");
  train_tagger_cmd->add_option("--patience", train_tagger_opts->config.patience,
                               "Early-stopping patience");
  train_tagger_cmd->add_option("--threshold", train_tagger_opts->config.threshold,
                               "Early-stopping improvement threshold");
  train_tagger_cmd->add_option("--restarts", train_tagger_opts->config.restarts,
                               "Training restarts (seeds seed..seed+k-1)");
  train_tagger_cmd->add_flag("--aux", train_tagger_opts->aux,
                             "Also train per-feature morphological classifiers");
  train_tagger_cmd->callback(
      [train_tagger_opts] { run_train_tagger(*train_tagger_opts); });

  auto train_lemmatizer_opts = std::make_shared<TrainLemmatizerOpts>();
  auto* train_lemmatizer_cmd =
      app.add_subcommand("train-lemmatizer", "Train the suffix-rule lemmatizer");
  train_lemmatizer_cmd
      ->add_option("--train", train_lemmatizer_opts->train, "Training TSVs")
      ->required();
  train_lemmatizer_cmd->add_option("--out", train_lemmatizer_opts->out, "Model file")
      ->required();
  train_lemmatizer_cmd->add_option("--max-suffix", train_lemmatizer_opts->max_suffix,
                                   "Maximum suffix length (code points)");
  train_lemmatizer_cmd->callback(
      [train_lemmatizer_opts] { run_train_lemmatizer(*train_lemmatizer_opts); });

  auto tag_opts = std::make_shared<TagOpts>();
  auto* tag = app.add_subcommand("tag", "Tokenize, tag, lemmatize and project morphology");
  tag->add_option("--in", tag_opts->in, "Plain-text input (- = stdin)")->required();
  tag->add_option("--out", tag_opts->out, "Annotated TSV output (- = stdout)");
  tag_opts->models.attach(tag);
  tag_opts->norm.attach(tag);
  tag->callback([tag_opts] { run_tag(*tag_opts); });

  auto lemmatize_opts = std::make_shared<LemmatizeOpts>();
  auto* lemmatize =
      app.add_subcommand("lemmatize", "Fill lemmas in a POS-annotated TSV");
  lemmatize->add_option("--in", lemmatize_opts->in, "Annotated TSV")->required();
  lemmatize->add_option("--out", lemmatize_opts->out, "Output TSV (- = stdout)");
  lemmatize_opts->models.attach(lemmatize);
  lemmatize->callback([lemmatize_opts] { run_lemmatize(*lemmatize_opts); });

  auto eval_opts = std::make_shared<EvalOpts>();
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy reports and grouped grids");
  eval_cmd->add_option("--task", eval_opts->task, "lemma|pos|morph")->required();
  eval_cmd->add_option("--train", eval_opts->train,
                       "Training TSVs (enables unknown/ambiguous classes)");
  eval_cmd->add_option("--gold", eval_opts->gold,
                       "Gold TSV (or directory with --group)")
      ->required();
  eval_cmd->add_option("--pred", eval_opts->pred,
                       "Predicted TSV (or directory with --group)")
      ->required();
  eval_cmd->add_option("--baseline-pred", eval_opts->baseline_pred,
                       "Baseline predictions; prints the improvement table");
  eval_cmd->add_option("--metadata", eval_opts->metadata, "Metadata CSV");
  eval_cmd->add_option("--group", eval_opts->group, "Grouping axes: century,channel");
  eval_cmd->add_option("--confusions", eval_opts->confusions,
                       "Also print the top-K confusions");
  eval_cmd->add_option("--out", eval_opts->out, "Report file (- = stdout)");
  eval_cmd->add_option("--json", eval_opts->json, "Machine-readable records (JSONL)");
  eval_cmd->callback([eval_opts] { run_eval(*eval_opts); });

  auto confusion_opts = std::make_shared<ConfusionsOpts>();
  auto* confusions_cmd = app.add_subcommand("confusions", "Most frequent confusions");
  confusions_cmd->add_option("--task", confusion_opts->task, "lemma|pos|morph")
      ->required();
  confusions_cmd->add_option("--gold", confusion_opts->gold, "Gold TSV")->required();
  confusions_cmd->add_option("--pred", confusion_opts->pred, "Predicted TSV")
      ->required();
  confusions_cmd->add_option("--top", confusion_opts->top, "Expected values to keep");
  confusions_cmd->add_option("--out", confusion_opts->out, "Output (- = stdout)");
  confusions_cmd->add_option("--json", confusion_opts->json, "JSONL output");
  confusions_cmd->callback([confusion_opts] { run_confusions(*confusion_opts); });

  auto balance_opts = std::make_shared<BalanceOpts>();
  auto* balance = app.add_subcommand("validate-balance",
                                     "Check out-of-domain sample balance");
  balance->add_option("--dir", balance_opts->dir, "Directory of sample TSVs")
      ->required();
  balance->add_option("--metadata", balance_opts->metadata, "Metadata CSV")->required();
  balance->add_option("--tau-gender", balance_opts->tau_gender,
                      "Relative male/female token tolerance");
  balance->add_option("--tau-size", balance_opts->tau_size,
                      "Relative sample size tolerance");
  balance->add_option("--per-channel", balance_opts->per_channel,
                      "Samples per channel per century");
  balance->add_option("--sample-tokens", balance_opts->sample_tokens,
                      "Nominal sample size in tokens");
  balance->callback([balance_opts] { run_validate_balance(*balance_opts); });

  auto serve_opts = std::make_shared<ServeOpts>();
  auto* serve = app.add_subcommand("serve", "HTTP annotation service");
  serve->add_option("--host", serve_opts->host, "Bind address");
  serve->add_option("--port", serve_opts->port, "Port");
  serve->add_option("--max-body", serve_opts->max_body, "Request size limit (bytes)");
  serve_opts->models.attach(serve);
  serve_opts->norm.attach(serve);
  serve->callback([serve_opts] { run_serve(*serve_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
