#include "commands.hpp"

#include "psel/baseline_scorer.hpp"
#include "psel/classifier_eval.hpp"
#include "psel/csv.hpp"
#include "psel/error.hpp"
#include "psel/profile_model.hpp"
#include "psel/random.hpp"
#include "psel/ranking_validation.hpp"
#include "psel/text.hpp"
#include "psel/topsis.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace psel::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config

void RunConfig::validate() const {
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw Error(ErrorKind::kRange, "split_fraction must lie in (0, 1)");
  }
  if (!(replacement_fraction > 0.0 && replacement_fraction <= 1.0)) {
    throw Error(ErrorKind::kRange, "replacement_fraction must lie in (0, 1]");
  }
  if (threshold && !(*threshold >= 0.0 && *threshold <= 1.0)) {
    throw Error(ErrorKind::kRange, "threshold must lie in [0, 1]");
  }
  if (!weights.empty()) (void)topsis::WeightVector(weights);
  if (!weights.empty() && weights.size() != criteria.size()) {
    throw Error(ErrorKind::kShape, "weights has " + std::to_string(weights.size()) + " entries for " +
                                       std::to_string(criteria.size()) + " criteria");
  }
  if (!directions.empty() && directions.size() != criteria.size()) {
    throw Error(ErrorKind::kShape, "directions has " + std::to_string(directions.size()) +
                                       " entries for " + std::to_string(criteria.size()) + " criteria");
  }
  for (const auto& d : directions) topsis::direction_from_string(d);
  if (validate_against != "score" && validate_against != "rank") {
    throw Error(ErrorKind::kRange, "validate_against must be 'score' or 'rank'");
  }
  if (output_dir.empty()) throw Error(ErrorKind::kRange, "output directory must be non-empty");
  if (epochs < 1) throw Error(ErrorKind::kRange, "epochs must be at least 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorKind::kRange, "learning_rate must be positive");
  if (patience < 0) throw Error(ErrorKind::kRange, "patience must be non-negative");
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config '" + path + "'");
  RunConfig c;
  try {
    const auto doc = nlohmann::json::parse(in);
    static const std::set<std::string> kKeys = {
        "profiles", "lexicon", "encoding", "train_rows", "test_rows", "score_files", "output_dir",
        "criteria", "weights", "directions", "validate_against", "split_fraction",
        "replacement_fraction", "augment_before_split", "balance", "threshold", "seed", "epochs",
        "learning_rate", "patience", "min_count", "parameter_counts"};
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.count(key)) throw Error(ErrorKind::kSchema, "config '" + path + "': unknown key '" + key + "'");
    }
    const auto get = [&](const char* key, auto& field) {
      if (doc.contains(key)) doc.at(key).get_to(field);
    };
    get("profiles", c.profiles);
    get("lexicon", c.lexicon);
    get("encoding", c.encoding);
    get("train_rows", c.train_rows);
    get("test_rows", c.test_rows);
    get("score_files", c.score_files);
    get("output_dir", c.output_dir);
    get("criteria", c.criteria);
    get("weights", c.weights);
    get("directions", c.directions);
    get("validate_against", c.validate_against);
    get("split_fraction", c.split_fraction);
    get("replacement_fraction", c.replacement_fraction);
    get("augment_before_split", c.augment_before_split);
    get("balance", c.balance);
    get("seed", c.seed);
    get("epochs", c.epochs);
    get("learning_rate", c.learning_rate);
    get("patience", c.patience);
    get("min_count", c.min_count);
    get("parameter_counts", c.parameter_counts);
    if (doc.contains("threshold") && !doc.at("threshold").is_null()) {
      c.threshold = doc.at("threshold").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, "config '" + path + "': " + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// File helpers

namespace {

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorKind::kIo, std::string("no ") + what + " path given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, std::string("cannot open ") + what + " '" + path + "'");
  return in;
}

// Re-raises a parse failure with the file name in front.
template <typename Fn>
auto with_file_context(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

fs::path output_path(const RunConfig& config, const std::string& name) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create output directory '" + config.output_dir + "': " + ec.message());
  return fs::path(config.output_dir) / name;
}

void write_file(const RunConfig& config, const std::string& name, const std::string& content) {
  const auto path = output_path(config, name);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

void write_json(const RunConfig& config, const std::string& name, const Json& doc) {
  write_file(config, name, doc.dump(2) + "\n");
}

std::string default_in_out(const RunConfig& config, const std::string& explicit_path, const std::string& name) {
  return explicit_path.empty() ? (fs::path(config.output_dir) / name).string() : explicit_path;
}

// Left-aligned first column, right-aligned numeric columns.
std::string aligned_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string pad(width[j] - cells[j].size(), ' ');
      if (j) out << "  ";
      out << (j == 0 ? cells[j] + pad : pad + cells[j]);
    }
    out << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

Dataset read_profiles(const RunConfig& config) {
  auto in = open_input(config.profiles, "profile file");
  return with_file_context(config.profiles, [&] { return load_profiles(in); });
}

LabeledRows read_labeled(const std::string& path) {
  auto in = open_input(path, "labeled-rows file");
  return with_file_context(path, [&] { return load_labeled_rows(in); });
}

EncodingConfig read_encoding(const RunConfig& config) {
  auto in = open_input(config.encoding, "encoding config");
  return with_file_context(config.encoding, [&] { return load_encoding_config(in); });
}

eval::Predictions read_scores(const std::string& path) {
  auto in = open_input(path, "score file");
  return with_file_context(path, [&] { return eval::load_score_file(in); });
}

Json label_counts_json(const LabeledRows& rows) {
  const auto [neg, pos] = class_counts(rows);
  return Json{{"0", neg}, {"1", pos}};
}

std::string model_name(const std::string& path) { return fs::path(path).stem().string(); }

Json threshold_json(const std::optional<double>& t) { return t ? Json(*t) : Json(nullptr); }

int run(const char* name, std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const Error& e) {
    err << "psel " << name << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    err << "psel " << name << ": " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ingest

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("ingest", err, [&] {
    config.validate();
    const Dataset dataset = read_profiles(config);
    const LabeledRows labeled = label_dataset(dataset);

    std::ostringstream canonical;
    write_profiles(canonical, dataset);
    write_file(config, "dataset.csv", canonical.str());

    std::map<int, std::size_t> scores;
    for (const auto& p : dataset.profiles()) ++scores[p.overall_score];
    Json score_hist = Json::object();
    for (const auto& [s, n] : scores) score_hist[std::to_string(s)] = n;

    Json doc;
    doc["command"] = "ingest";
    doc["source"] = config.profiles;
    doc["rows"] = dataset.size();
    doc["label_mapping"] = "overall_score 0-2 -> 0, 3-5 -> 1";
    doc["label_counts"] = label_counts_json(labeled);
    doc["overall_score_counts"] = score_hist;
    write_json(config, "ingest.json", doc);

    const auto [neg, pos] = class_counts(labeled);
    out << "rows: " << dataset.size() << '\n'
        << "label 0 (unsuitable): " << neg << '\n'
        << "label 1 (suitable): " << pos << '\n';
  });
}

// ---------------------------------------------------------------------------
// preprocess

int cmd_preprocess(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("preprocess", err, [&] {
    config.validate();
    const Dataset dataset = read_profiles(config);
    LabeledRows rows = label_dataset(dataset);

    std::optional<SynonymLexicon> lexicon;
    if (!config.lexicon.empty()) {
      auto in = open_input(config.lexicon, "lexicon");
      lexicon = with_file_context(config.lexicon, [&] { return load_lexicon(in); });
    }
    AugmentationConfig aug{config.replacement_fraction, derive_seed(config.seed, "augment")};
    const auto split_seed = derive_seed(config.seed, "split");
    const auto resample_seed = derive_seed(config.seed, "resample");

    auto enlarge = [&](const LabeledRows& in) {
      LabeledRows r = lexicon ? augment_dataset(in, *lexicon, aug) : in;
      return config.balance ? balance_classes(r, resample_seed) : r;
    };

    Split split;
    if (config.augment_before_split) {
      split = train_test_split(enlarge(rows), config.split_fraction, split_seed);
    } else {
      split = train_test_split(rows, config.split_fraction, split_seed);
      split.train = enlarge(split.train);
    }

    std::vector<BinaryLabel> train_labels;
    for (const auto& r : split.train) train_labels.push_back(r.label);
    const ClassWeights weights = compute_class_weights(train_labels);

    std::ostringstream train_csv, test_csv;
    write_labeled_rows(train_csv, split.train);
    write_labeled_rows(test_csv, split.test);
    write_file(config, "train.csv", train_csv.str());
    write_file(config, "test.csv", test_csv.str());

    Json doc;
    doc["command"] = "preprocess";
    doc["config"] = {
        {"source", config.profiles},
        {"lexicon", config.lexicon.empty() ? Json(nullptr) : Json(config.lexicon)},
        {"seed", config.seed},
        {"order", config.augment_before_split ? "augment, balance, split" : "split, augment train, balance train"},
        {"split_fraction", config.split_fraction},
        {"replacement_fraction", config.replacement_fraction},
        {"balance", config.balance},
    };
    doc["input_rows"] = rows.size();
    doc["input_label_counts"] = label_counts_json(rows);
    doc["train_rows"] = split.train.size();
    doc["train_label_counts"] = label_counts_json(split.train);
    doc["test_rows"] = split.test.size();
    doc["test_label_counts"] = label_counts_json(split.test);
    doc["class_weights"] = {{"formula", "N / (2 * n_c)"}, {"0", weights.negative}, {"1", weights.positive}};
    write_json(config, "preprocess.json", doc);

    const auto [tn, tp] = class_counts(split.train);
    const auto [sn, sp] = class_counts(split.test);
    out << aligned_table({"set", "rows", "label 0", "label 1"},
                         {{"train", std::to_string(split.train.size()), std::to_string(tn), std::to_string(tp)},
                          {"test", std::to_string(split.test.size()), std::to_string(sn), std::to_string(sp)}});
    out << "class weights: 0 -> " << text::fixed(weights.negative, 4) << ", 1 -> "
        << text::fixed(weights.positive, 4) << '\n';
  });
}

// ---------------------------------------------------------------------------
// rank

namespace {

std::vector<double> expert_rank_positions(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  std::vector<double> pos(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = static_cast<double>(r + 1);
  return pos;
}

Json metric_json(const validation::ValidationReport& report) {
  Json metrics = Json::object();
  for (const auto& m : report.metrics) {
    if (m.value) metrics[m.name] = {{"value", *m.value}};
    else metrics[m.name] = {{"value", nullptr}, {"unavailable", m.unavailable_reason}};
  }
  return metrics;
}

}  // namespace

int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("rank", err, [&] {
    config.validate();
    const Dataset dataset = read_profiles(config);
    const EncodingConfig encoding = read_encoding(config);
    const FeatureMatrix features = with_file_context(config.encoding, [&] { return encode_features(dataset, encoding); });

    Matrix entries(features.values.rows(), config.criteria.size());
    for (std::size_t j = 0; j < config.criteria.size(); ++j) {
      if (config.criteria[j] == "overall_score") {
        throw Error(ErrorKind::kSchema, "overall_score is the expert reference and cannot be a criterion");
      }
      const auto col = features.column(config.criteria[j]);
      for (std::size_t i = 0; i < entries.rows(); ++i) entries(i, j) = features.values(i, col);
    }
    const topsis::DecisionMatrix matrix(std::move(entries), config.criteria, features.row_ids);
    const auto weights = config.weights.empty() ? topsis::WeightVector::equal(config.criteria.size())
                                                : topsis::WeightVector(config.weights);
    std::vector<topsis::Direction> directions(config.criteria.size(), topsis::Direction::kBenefit);
    for (std::size_t j = 0; j < config.directions.size(); ++j) {
      directions[j] = topsis::direction_from_string(config.directions[j]);
    }
    const auto result = topsis::topsis(matrix, weights, directions);

    // Validation against the expert overall scores.
    const std::size_t m = dataset.size();
    std::vector<double> reference(m), predicted(m);
    std::string predicted_def, reference_def;
    if (config.validate_against == "score") {
      for (std::size_t i = 0; i < m; ++i) {
        reference[i] = dataset[i].overall_score;
        predicted[i] = 5.0 * result.closeness[i];
      }
      predicted_def = "5 * closeness";
      reference_def = "overall_score";
    } else {
      std::vector<double> expert(m);
      for (std::size_t i = 0; i < m; ++i) expert[i] = dataset[i].overall_score;
      reference = expert_rank_positions(expert);
      for (std::size_t r = 0; r < m; ++r) predicted[result.ranking[r]] = static_cast<double>(r + 1);
      predicted_def = "TOPSIS rank position (1 = best)";
      reference_def = "rank position by overall_score, ties by input order";
    }
    const auto report = validation::validation_report(validation::ScorePair(predicted, reference));

    std::vector<std::string> dirs;
    for (auto d : directions) dirs.emplace_back(topsis::to_string(d));

    Json doc;
    doc["command"] = "rank";
    doc["config"] = {
        {"source", config.profiles},
        {"encoding", config.encoding},
        {"seed", config.seed},
        {"criteria", config.criteria},
        {"weights", weights.raw()},
        {"normalized_weights", weights.normalized()},
        {"weights_declared", config.weights.empty() ? "default equal weights" : "config"},
        {"directions", dirs},
        {"normalization", "vector (Euclidean) per criterion"},
    };
    Json candidates = Json::array();
    for (std::size_t r = 0; r < m; ++r) {
      const auto i = result.ranking[r];
      candidates.push_back({{"rank", r + 1},
                            {"id", result.candidate_ids[i]},
                            {"closeness", result.closeness[i]},
                            {"s_plus", result.s_plus[i]},
                            {"s_minus", result.s_minus[i]}});
    }
    doc["ranking"] = candidates;
    doc["validation"] = {
        {"predicted", predicted_def},
        {"reference", reference_def},
        {"definitions", {{"nrmse_divisor", validation::kNrmseDivisor}, {"mape_anchor", validation::kMapeAnchor}}},
        {"metrics", metric_json(report)},
    };
    write_json(config, "rank.json", doc);

    std::ostringstream csv_out;
    csv::write_record(csv_out, {"rank", "id", "closeness", "s_plus", "s_minus"});
    std::vector<std::vector<std::string>> table;
    for (std::size_t r = 0; r < m; ++r) {
      const auto i = result.ranking[r];
      csv::write_record(csv_out, {std::to_string(r + 1), result.candidate_ids[i],
                                  text::format_double(result.closeness[i]),
                                  text::format_double(result.s_plus[i]),
                                  text::format_double(result.s_minus[i])});
      table.push_back({result.candidate_ids[i], std::to_string(r + 1), text::fixed(result.closeness[i], 4),
                       std::to_string(dataset[i].overall_score)});
    }
    write_file(config, "ranking.csv", csv_out.str());

    std::vector<std::vector<std::string>> metric_rows;
    for (const auto& mv : report.metrics) {
      metric_rows.push_back({mv.name, mv.value ? text::fixed(*mv.value, 4) : "n/a (" + mv.unavailable_reason + ")"});
    }
    const std::string human = aligned_table({"id", "rank", "closeness", "expert"}, table) + "\n" +
                              aligned_table({"metric", "value"}, metric_rows);
    write_file(config, "rank.txt", human);
    out << human;
  });
}

// ---------------------------------------------------------------------------
// train-baseline

int cmd_train_baseline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("train-baseline", err, [&] {
    config.validate();
    const auto train_path = default_in_out(config, config.train_rows, "train.csv");
    const auto test_path = default_in_out(config, config.test_rows, "test.csv");
    const LabeledRows train_rows = read_labeled(train_path);
    const LabeledRows test_rows = read_labeled(test_path);

    std::vector<BinaryLabel> labels;
    for (const auto& r : train_rows) labels.push_back(r.label);

    baseline::TrainingConfig tc;
    tc.epochs = config.epochs;
    tc.learning_rate = config.learning_rate;
    tc.class_weights = compute_class_weights(labels);
    tc.rng_seed = derive_seed(config.seed, "train");
    tc.early_stopping_patience = config.patience;
    tc.min_count = config.min_count;
    const auto trained = baseline::train(train_rows, tc);

    std::ostringstream model_json;
    baseline::save_model(model_json, trained.model, tc);
    write_file(config, "model.json", model_json.str());

    std::ostringstream history;
    csv::write_record(history, {"epoch", "train_loss", "learning_rate"});
    for (const auto& h : trained.history) {
      csv::write_record(history, {std::to_string(h.epoch), text::format_double(h.loss), text::format_double(h.learning_rate)});
    }
    write_file(config, "training_history.csv", history.str());

    const auto test_scores = baseline::score_rows(trained.model, test_rows);
    std::ostringstream scores;
    eval::write_score_file(scores, test_scores);
    write_file(config, "scores.csv", scores.str());

    const auto train_eval = eval::confusion_matrix(baseline::score_rows(trained.model, train_rows), 0.5);
    const auto test_eval = eval::confusion_matrix(test_scores, 0.5);
    const double train_acc = eval::classification_report(train_eval).accuracy;
    const double test_acc = eval::classification_report(test_eval).accuracy;
    const auto [tn, tp] = class_counts(test_rows);
    const double majority = static_cast<double>(std::max(tn, tp)) / static_cast<double>(test_rows.size());

    Json doc;
    doc["command"] = "train-baseline";
    doc["config"] = {
        {"train_rows", train_path},
        {"test_rows", test_path},
        {"seed", config.seed},
        {"epochs", tc.epochs},
        {"learning_rate", tc.learning_rate},
        {"early_stopping_patience", tc.early_stopping_patience},
        {"min_count", tc.min_count},
        {"class_weights", {{"0", tc.class_weights.negative}, {"1", tc.class_weights.positive}}},
    };
    doc["vocabulary_size"] = trained.model.vocabulary.size();
    doc["parameter_count"] = trained.model.vocabulary.size() + 1;
    doc["epochs_run"] = trained.history.size();
    doc["stopped_early"] = trained.stopped_early;
    doc["final_train_loss"] = trained.history.empty() ? Json(nullptr) : Json(trained.history.back().loss);
    doc["train_accuracy_at_0.5"] = train_acc;
    doc["test_accuracy_at_0.5"] = test_acc;
    doc["test_majority_baseline"] = majority;
    write_json(config, "train_baseline.json", doc);

    out << "vocabulary: " << trained.model.vocabulary.size() << " tokens\n"
        << "epochs run: " << trained.history.size() << (trained.stopped_early ? " (early stop)" : "") << '\n'
        << "train accuracy @0.5: " << text::fixed(train_acc, 4) << '\n'
        << "test accuracy @0.5: " << text::fixed(test_acc, 4) << " (majority baseline "
        << text::fixed(majority, 4) << ")\n";
  });
}

// ---------------------------------------------------------------------------
// evaluate / compare

namespace {

Json evaluation_json(const eval::Evaluation& ev) {
  const auto& r = ev.report;
  auto cls = [](const eval::ClassMetrics& c) {
    return Json{{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
  };
  Json doc;
  doc["threshold"] = ev.threshold;
  doc["threshold_source"] = eval::to_string(ev.threshold_source);
  doc["decision_rule"] = "probability >= threshold -> 1";
  doc["confusion_matrix"] = {{"tp", ev.confusion.tp}, {"fp", ev.confusion.fp}, {"tn", ev.confusion.tn}, {"fn", ev.confusion.fn}};
  doc["accuracy"] = r.accuracy;
  doc["classes"] = {{"0", cls(r.negative)}, {"1", cls(r.positive)}};
  doc["weighted"] = {{"precision", r.weighted_precision}, {"recall", r.weighted_recall}, {"f1", r.weighted_f1}};
  doc["zero_division"] = 0;
  if (ev.roc) {
    doc["roc"] = {{"auc", ev.roc->auc}, {"points", ev.roc->points.size()}, {"auc_method", "trapezoidal"}};
    doc["youden"] = {{"threshold", ev.youden->threshold},
                     {"j", ev.youden->youden_j},
                     {"sensitivity", ev.youden->sensitivity},
                     {"specificity", ev.youden->specificity}};
  } else {
    doc["roc"] = {{"skipped", ev.roc_skipped_reason}};
  }
  return doc;
}

std::string evaluation_table(const std::string& name, const eval::Evaluation& ev) {
  const auto& r = ev.report;
  std::ostringstream out;
  out << "model: " << name << '\n'
      << "threshold: " << text::fixed(ev.threshold, 4) << " (" << eval::to_string(ev.threshold_source) << ")\n"
      << "confusion: tp=" << ev.confusion.tp << " fp=" << ev.confusion.fp << " tn=" << ev.confusion.tn
      << " fn=" << ev.confusion.fn << '\n';
  out << aligned_table({"class", "precision", "recall", "f1", "support"},
                       {{"0", text::fixed(r.negative.precision, 4), text::fixed(r.negative.recall, 4),
                         text::fixed(r.negative.f1, 4), std::to_string(r.negative.support)},
                        {"1", text::fixed(r.positive.precision, 4), text::fixed(r.positive.recall, 4),
                         text::fixed(r.positive.f1, 4), std::to_string(r.positive.support)},
                        {"weighted", text::fixed(r.weighted_precision, 4), text::fixed(r.weighted_recall, 4),
                         text::fixed(r.weighted_f1, 4), std::to_string(ev.confusion.total())}});
  out << "accuracy: " << text::fixed(r.accuracy, 4) << '\n';
  if (ev.roc) out << "auc: " << text::fixed(ev.roc->auc, 4) << '\n';
  else out << "roc skipped: " << ev.roc_skipped_reason << '\n';
  return out.str();
}

}  // namespace

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("evaluate", err, [&] {
    config.validate();
    if (config.score_files.size() != 1) {
      throw Error(ErrorKind::kRange, "evaluate takes exactly one score file");
    }
    const auto& path = config.score_files.front();
    const auto preds = read_scores(path);
    const auto ev = eval::evaluate(preds, config.threshold);

    Json doc;
    doc["command"] = "evaluate";
    doc["config"] = {{"score_file", path}, {"threshold_override", threshold_json(config.threshold)}, {"seed", config.seed}};
    doc["model"] = model_name(path);
    doc["rows"] = preds.size();
    doc.update(evaluation_json(ev));
    write_json(config, "evaluation.json", doc);
    if (ev.roc) {
      std::ostringstream roc;
      eval::write_roc_points(roc, *ev.roc);
      write_file(config, "roc.csv", roc.str());
    }
    const auto human = evaluation_table(model_name(path), ev);
    write_file(config, "evaluation.txt", human);
    out << human;
  });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("compare", err, [&] {
    config.validate();
    if (config.score_files.empty()) throw Error(ErrorKind::kEmpty, "compare needs at least one score file");
    std::vector<eval::ModelEntry> entries;
    std::set<std::string> names;
    Json models = Json::array();
    for (const auto& path : config.score_files) {
      const auto preds = read_scores(path);
      const auto ev = with_file_context(path, [&] { return eval::evaluate(preds, config.threshold); });
      eval::ModelEntry e;
      e.name = model_name(path);
      if (!names.insert(e.name).second) throw Error(ErrorKind::kUniqueness, "two score files named '" + e.name + "'");
      e.report = ev.report;
      if (ev.youden && ev.threshold_source == eval::ThresholdSource::kYoudenOptimal) {
        e.threshold = *ev.youden;
      } else {
        e.threshold.threshold = ev.threshold;
        e.threshold.sensitivity = ev.report.positive.recall;
        e.threshold.specificity = ev.report.negative.recall;
        e.threshold.youden_j = e.threshold.sensitivity + e.threshold.specificity - 1.0;
      }
      if (const auto it = config.parameter_counts.find(e.name); it != config.parameter_counts.end()) {
        e.parameter_count = it->second;
      }
      Json m = evaluation_json(ev);
      m["model"] = e.name;
      m["score_file"] = path;
      models.push_back(m);
      entries.push_back(std::move(e));
    }
    const auto rows = eval::compare_models(entries);

    Json table = Json::array();
    std::ostringstream plot;
    csv::write_record(plot, {"model", "accuracy", "f1", "threshold"});
    std::vector<std::vector<std::string>> human_rows;
    for (const auto& r : rows) {
      table.push_back({{"model", r.name},
                       {"accuracy", r.accuracy},
                       {"weighted_f1", r.weighted_f1},
                       {"weighted_precision", r.weighted_precision},
                       {"weighted_recall", r.weighted_recall},
                       {"threshold", r.threshold},
                       {"parameter_count", r.parameter_count ? Json(*r.parameter_count) : Json(nullptr)}});
      csv::write_record(plot, {r.name, text::format_double(r.accuracy), text::format_double(r.weighted_f1),
                               text::format_double(r.threshold)});
      human_rows.push_back({r.name, text::fixed(100.0 * r.accuracy, 2), text::fixed(r.weighted_f1, 4),
                            text::fixed(r.weighted_precision, 4), text::fixed(r.weighted_recall, 4),
                            text::fixed(r.threshold, 4), r.parameter_count ? std::to_string(*r.parameter_count) : "-"});
    }
    Json doc;
    doc["command"] = "compare";
    doc["config"] = {{"score_files", config.score_files}, {"threshold_override", threshold_json(config.threshold)}, {"seed", config.seed}};
    doc["ordering"] = "accuracy desc, weighted f1 desc";
    doc["table"] = table;
    doc["models"] = models;
    write_json(config, "compare.json", doc);
    write_file(config, "compare_plot.csv", plot.str());
    const auto human = aligned_table({"model", "accuracy %", "f1", "precision", "recall", "threshold", "parameters"}, human_rows);
    write_file(config, "compare.txt", human);
    out << human;
  });
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run("report", err, [&] {
    config.validate();
    const Dataset dataset = read_profiles(config);
    const EncodingConfig encoding = read_encoding(config);
    const FeatureMatrix features = with_file_context(config.encoding, [&] { return encode_features(dataset, encoding); });
    const Matrix corr = pearson_correlation_matrix(features);

    std::ostringstream csv_out;
    auto header = features.column_names;
    header.insert(header.begin(), "feature");
    csv::write_record(csv_out, header);
    Json matrix = Json::array();
    std::vector<std::vector<std::string>> human_rows;
    for (std::size_t a = 0; a < corr.rows(); ++a) {
      csv::Record rec{features.column_names[a]};
      std::vector<std::string> human{features.column_names[a]};
      Json row = Json::array();
      for (std::size_t b = 0; b < corr.cols(); ++b) {
        rec.push_back(text::format_double(corr(a, b)));
        human.push_back(text::fixed(corr(a, b), 2));
        row.push_back(corr(a, b));
      }
      csv::write_record(csv_out, rec);
      human_rows.push_back(std::move(human));
      matrix.push_back(row);
    }
    write_file(config, "correlation.csv", csv_out.str());

    Json doc;
    doc["command"] = "report";
    doc["config"] = {{"source", config.profiles}, {"encoding", config.encoding}, {"seed", config.seed}};
    doc["correlation"] = {{"method", "pearson"}, {"columns", features.column_names}, {"matrix", matrix}};

    // Collect whatever earlier commands left in the output directory.
    Json artifacts = Json::object();
    for (const char* name : {"ingest.json", "preprocess.json", "rank.json", "train_baseline.json",
                             "evaluation.json", "compare.json"}) {
      const auto path = fs::path(config.output_dir) / name;
      std::ifstream in(path);
      if (!in) continue;
      try {
        artifacts[name] = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
      }
    }
    doc["artifacts"] = artifacts;
    write_json(config, "report.json", doc);

    auto human_header = features.column_names;
    human_header.insert(human_header.begin(), "");
    std::string human = "feature correlation (pearson)\n" + aligned_table(human_header, human_rows);
    if (artifacts.contains("compare.json")) {
      human += "\nmodel comparison: see compare.txt\n";
    }
    human += "\nartifacts included: " + std::to_string(artifacts.size()) + "\n";
    write_file(config, "report.txt", human);
    out << human;
  });
}

}  // namespace psel::cli
