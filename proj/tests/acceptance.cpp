// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "commands.hpp"
#include "oracles.hpp"
#include "psel/baseline_scorer.hpp"
#include "psel/classifier_eval.hpp"
#include "psel/preprocessing.hpp"
#include "psel/ranking_validation.hpp"
#include "psel/synthetic.hpp"
#include "psel/topsis.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace psel;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

struct Instance {
  std::vector<std::vector<double>> d;
  std::vector<double> w;
  std::vector<topsis::Direction> dirs;
};

Instance random_instance(std::mt19937_64& g) {
  Instance inst;
  const int m = uniform_int(g, 2, 20), n = uniform_int(g, 1, 6);
  inst.d.assign(m, std::vector<double>(n));
  for (auto& row : inst.d) {
    for (auto& x : row) x = uniform(g, 0.1, 100.0);
  }
  for (int j = 0; j < n; ++j) {
    inst.w.push_back(uniform(g, 0.05, 1.0));
    inst.dirs.push_back(uniform_int(g, 0, 1) ? topsis::Direction::kBenefit : topsis::Direction::kCost);
  }
  return inst;
}

std::vector<double> closeness_of(const Instance& inst) {
  return topsis::topsis(topsis::DecisionMatrix::from_rows(inst.d), topsis::WeightVector(inst.w), inst.dirs)
      .closeness;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

// --- TOPSIS ---------------------------------------------------------------

Outcome topsis_oracle() {
  Outcome o;
  std::mt19937_64 g(1001);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto inst = random_instance(g);
    std::vector<bool> benefit;
    for (auto d : inst.dirs) benefit.push_back(d == topsis::Direction::kBenefit);
    const auto got = topsis::topsis(topsis::DecisionMatrix::from_rows(inst.d), topsis::WeightVector(inst.w),
                                    inst.dirs);
    const auto want = oracle::topsis(inst.d, inst.w, benefit);
    worst = std::max(worst, max_abs_diff(got.closeness, want.closeness));
    o.require(got.ranking == want.ranking, "ranking differs on instance " + std::to_string(k));
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= 1e-9, "max closeness error " + std::to_string(worst));
  o.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |dC| = %.2e, %.3f s", worst, elapsed);
    o.detail = buf;
  }
  return o;
}

Outcome topsis_dominance() {
  Outcome o;
  const auto r = topsis::topsis(topsis::DecisionMatrix::from_rows({{2, 2}, {1, 1}}), topsis::WeightVector::equal(2),
                                {topsis::Direction::kBenefit, topsis::Direction::kBenefit});
  o.require(r.closeness == std::vector<double>{1.0, 0.0}, "closeness not exactly [1, 0]");
  o.require(r.ranking == std::vector<std::size_t>{0, 1}, "ranking not [0, 1]");
  if (o.pass) o.detail = "closeness [1, 0]";
  return o;
}

Outcome topsis_invariances() {
  Outcome o;
  std::mt19937_64 g(1002);
  double scale = 0.0, perm = 0.0, dual = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto inst = random_instance(g);
    const auto base = closeness_of(inst);

    auto scaled = inst;
    const std::size_t j = uniform_int(g, 0, static_cast<int>(inst.w.size()) - 1);
    const double factor = uniform(g, 0.01, 1000.0);
    for (auto& row : scaled.d) row[j] *= factor;
    scale = std::max(scale, max_abs_diff(base, closeness_of(scaled)));

    std::vector<std::size_t> order(inst.d.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), g);
    auto permuted = inst;
    for (std::size_t i = 0; i < order.size(); ++i) permuted.d[i] = inst.d[order[i]];
    const auto pc = closeness_of(permuted);
    for (std::size_t i = 0; i < order.size(); ++i) perm = std::max(perm, std::fabs(pc[i] - base[order[i]]));

    auto flipped = inst;
    for (auto& row : flipped.d) row[j] = -row[j];
    flipped.dirs[j] = flipped.dirs[j] == topsis::Direction::kBenefit ? topsis::Direction::kCost
                                                                      : topsis::Direction::kBenefit;
    dual = std::max(dual, max_abs_diff(base, closeness_of(flipped)));
  }
  o.require(scale <= 1e-12, "scaling error " + std::to_string(scale));
  o.require(perm <= 1e-12, "permutation error " + std::to_string(perm));
  o.require(dual <= 1e-12, "negate/flip error " + std::to_string(dual));
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "scale %.1e, permute %.1e, flip %.1e", scale, perm, dual);
    o.detail = buf;
  }
  return o;
}

// --- Classifier evaluation -----------------------------------------------

Outcome reference_figures() {
  Outcome o;
  const eval::ConfusionMatrix cm{12, 0, 5, 3};
  const auto r = eval::classification_report(cm);
  o.require(r.accuracy == 0.85, "accuracy " + std::to_string(r.accuracy));
  o.require(r.weighted_recall == 0.85, "weighted recall " + std::to_string(r.weighted_recall));
  o.require(std::fabs(r.weighted_f1 - 0.8589) <= 0.0005, "weighted f1 " + std::to_string(r.weighted_f1));
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "accuracy 0.85, weighted recall 0.85, weighted f1 %.4f", r.weighted_f1);
    o.detail = buf;
  }
  return o;
}

eval::Predictions make_predictions(const std::vector<double>& s, const std::vector<int>& y) {
  eval::Predictions p;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p.push_back({"r" + std::to_string(i), s[i], label_from_int(y[i])});
  }
  return p;
}

Outcome auc_oracle() {
  Outcome o;
  std::mt19937_64 g(1003);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = uniform_int(g, 2, 100);
    std::vector<double> s(n);
    std::vector<int> y(n);
    // Coarse grid on half the sets so ties are common.
    const bool coarse = k % 2 == 0;
    for (int i = 0; i < n; ++i) {
      s[i] = coarse ? uniform_int(g, 0, 10) / 10.0 : uniform(g, 0.0, 1.0);
      y[i] = uniform_int(g, 0, 1);
    }
    y[0] = 0;
    y[1] = 1;
    const auto curve = eval::roc_curve(make_predictions(s, y));
    worst = std::max(worst, std::fabs(curve.auc - oracle::concordance_auc(s, y)));
  }
  o.require(worst <= 1e-12, "max AUC error " + std::to_string(worst));

  std::vector<double> s;
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) {
    s.push_back(uniform(g, 0.0, 0.49));
    y.push_back(0);
    s.push_back(uniform(g, 0.51, 1.0));
    y.push_back(1);
  }
  const double separated = eval::roc_curve(make_predictions(s, y)).auc;
  o.require(separated == 1.0, "separated AUC " + std::to_string(separated));

  s.clear();
  y.clear();
  for (int i = 0; i < 1000; ++i) {
    s.push_back(uniform(g, 0.0, 1.0));
    y.push_back(i % 2);
  }
  std::shuffle(y.begin(), y.end(), g);
  const double shuffled = eval::roc_curve(make_predictions(s, y)).auc;
  o.require(std::fabs(shuffled - 0.5) <= 0.05, "shuffled AUC " + std::to_string(shuffled));
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |dAUC| = %.1e, separated 1.0, shuffled %.4f", worst, shuffled);
    o.detail = buf;
  }
  return o;
}

Outcome youden_threshold() {
  Outcome o;
  const std::vector<double> s = {0.9, 0.8, 0.7, 0.52, 0.3, 0.6, 0.5, 0.45, 0.4, 0.2, 0.1};
  const std::vector<int> y = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0};

  // Exhaustive enumeration: the maximizer must be unique and equal 0.52.
  double best_j = -2.0, best_t = 0.0;
  int ties = 0;
  for (double t : s) {
    const double j = oracle::youden_at(s, y, t);
    if (j > best_j) {
      best_j = j;
      best_t = t;
      ties = 1;
    } else if (j == best_j) {
      ++ties;
    }
  }
  o.require(best_t == 0.52 && ties == 1, "constructed set does not have a unique maximizer at 0.52");

  const auto r = eval::optimal_threshold(eval::roc_curve(make_predictions(s, y)));
  o.require(r.threshold == 0.52, "threshold " + std::to_string(r.threshold));
  o.require(r.youden_j == r.sensitivity + r.specificity - 1.0, "J != sensitivity + specificity - 1");
  o.require(std::fabs(r.youden_j - best_j) <= 1e-15, "J disagrees with enumeration");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "threshold 0.52, J %.6f", r.youden_j);
    o.detail = buf;
  }
  return o;
}

// --- Ranking validation ---------------------------------------------------

Outcome validation_metrics() {
  Outcome o;
  std::mt19937_64 g(1004);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int m = uniform_int(g, 2, 50);
    std::vector<double> p(m), r(m);
    for (int i = 0; i < m; ++i) {
      p[i] = uniform(g, 0.0, 5.0);
      r[i] = uniform(g, 0.5, 5.0);
    }
    const validation::ScorePair pair(p, r);
    const auto want = oracle::metrics(p, r);
    const double got[] = {validation::rmse(pair),
                          validation::mae(pair),
                          validation::mape(pair),
                          validation::manhattan_distance(pair),
                          validation::cosine_similarity(pair),
                          validation::normalized_rmse(pair)};
    const double ref[] = {want.rmse, want.mae, want.mape, want.manhattan, want.cosine, want.nrmse};
    for (int i = 0; i < 6; ++i) {
      // Relative for the summed quantities, which grow with m.
      const double err = std::fabs(got[i] - ref[i]) / std::max(1.0, std::fabs(ref[i]));
      worst = std::max(worst, err);
    }
    o.require(got[1] <= got[0], "mae > rmse on pair " + std::to_string(k));
    o.require(std::fabs(got[3] - m * got[1]) <= 1e-12 * std::max(1.0, got[3]),
              "manhattan != m * mae on pair " + std::to_string(k));
    const double c = uniform(g, 0.01, 100.0);
    std::vector<double> ps = p;
    for (auto& x : ps) x *= c;
    const double scaled = validation::cosine_similarity(validation::ScorePair(ps, r));
    o.require(std::fabs(scaled - got[4]) <= 1e-12, "cosine not scale invariant on pair " + std::to_string(k));
  }
  o.require(worst <= 1e-12, "max metric error " + std::to_string(worst));
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max error %.1e, identities hold", worst);
    o.detail = buf;
  }
  return o;
}

// --- Preprocessing --------------------------------------------------------

CandidateProfile profile(const std::string& id, int score, const std::string& about = "good team player") {
  CandidateProfile p;
  p.id = id;
  p.experience_years = 1.0;
  p.education = "BSc";
  p.skills = {"Python"};
  p.about = about;
  p.job_title = "Engineer";
  p.overall_score = score;
  return p;
}

std::multiset<std::string> ids_of(const LabeledRows& rows) {
  std::multiset<std::string> ids;
  for (const auto& r : rows) ids.insert(r.profile.id);
  return ids;
}

Outcome preprocessing() {
  Outcome o;
  const int expected[] = {0, 0, 0, 1, 1, 1};
  for (int s = 0; s <= 5; ++s) {
    o.require(to_int(map_score_to_label(s)) == expected[s], "label for score " + std::to_string(s));
  }

  std::mt19937_64 g(1005);
  for (int k = 0; k < 50; ++k) {
    const int neg = uniform_int(g, 1, 30), pos = uniform_int(g, 1, 30);
    LabeledRows rows;
    for (int i = 0; i < neg; ++i) rows.push_back({profile("n" + std::to_string(i), 1), BinaryLabel::kNegative});
    for (int i = 0; i < pos; ++i) rows.push_back({profile("p" + std::to_string(i), 4), BinaryLabel::kPositive});
    const auto balanced = balance_classes(rows, g());
    const auto [bn, bp] = class_counts(balanced);
    o.require(bn == bp && bn == static_cast<std::size_t>(std::max(neg, pos)),
              "balance failed for " + std::to_string(neg) + "/" + std::to_string(pos));
  }

  const auto dataset = synthetic::generate_profiles(60, 5);
  const auto labeled = label_dataset(dataset);
  const auto augmented = augment_dataset(labeled, synthetic::lexicon(), {0.5, 9});
  o.require(augmented.size() == 2 * labeled.size(), "augment did not double the rows");
  for (std::size_t i = 0; i < labeled.size() && o.pass; ++i) {
    o.require(augmented[i] == labeled[i], "augment changed an original row");
    o.require(augmented[labeled.size() + i].label == labeled[i].label, "augment changed a label");
  }

  // Include duplicate ids so the cover check is a true multiset check.
  const auto with_dups = balance_classes(labeled, 3);
  for (double f : {0.5, 0.8, 0.9}) {
    const auto split = train_test_split(with_dups, f, 11);
    auto joined = ids_of(split.train);
    const auto test_ids = ids_of(split.test);
    joined.insert(test_ids.begin(), test_ids.end());
    o.require(joined == ids_of(with_dups), "split is not a cover at " + std::to_string(f));
    o.require(split.train.size() == static_cast<std::size_t>(std::llround(f * with_dups.size())),
              "train size at " + std::to_string(f));
    // Disjoint as a multiset: the two sides together use each row exactly once.
    o.require(split.train.size() + split.test.size() == with_dups.size(), "split sizes at " + std::to_string(f));
  }
  if (o.pass) o.detail = "labels, 50 balance sets, augment, splits at 0.5/0.8/0.9";
  return o;
}

// --- Baseline scorer ------------------------------------------------------

struct TempDir {
  fs::path path;
  TempDir() {
    char tmpl[] = "/tmp/psel_accept_XXXXXX";
    path = mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path); }
};

cli::RunConfig synthetic_run(const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream profiles(dir / "profiles.csv");
    write_profiles(profiles, synthetic::generate_profiles(100, 2024));
    std::ofstream enc(dir / "encoding.json");
    enc << dump_encoding_config(synthetic::encoding_config());
    std::ofstream lex(dir / "lexicon.tsv");
    synthetic::write_lexicon(lex);
  }
  cli::RunConfig c;
  c.profiles = (dir / "profiles.csv").string();
  c.encoding = (dir / "encoding.json").string();
  c.lexicon = (dir / "lexicon.tsv").string();
  c.output_dir = (dir / "out").string();
  c.seed = 42;
  return c;
}

Outcome baseline_scorer() {
  Outcome o;
  std::mt19937_64 g(1006);
  const std::size_t dim = 12;
  std::vector<baseline::SparseVector> rows;
  std::vector<BinaryLabel> labels;
  for (int i = 0; i < 30; ++i) {
    baseline::SparseVector x;
    for (std::size_t j = 0; j < dim; ++j) {
      if (uniform_int(g, 0, 2) == 0) x.push_back({j, static_cast<double>(uniform_int(g, 1, 3))});
    }
    rows.push_back(x);
    labels.push_back(label_from_int(uniform_int(g, 0, 1)));
  }
  const baseline::WeightedLogisticObjective objective(rows, labels, {0.8, 1.3}, dim);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    std::vector<double> params(objective.parameter_count());
    for (auto& p : params) p = uniform(g, -1.0, 1.0);
    const auto grad = objective.gradient(params);
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double h = 1e-5;
      auto up = params, down = params;
      up[j] += h;
      down[j] -= h;
      const double fd = (objective.loss(up) - objective.loss(down)) / (2 * h);
      const double rel = std::fabs(fd - grad[j]) / std::max({std::fabs(fd), std::fabs(grad[j]), 1e-6});
      worst = std::max(worst, rel);
    }
  }
  o.require(worst < 1e-4, "gradient relative error " + std::to_string(worst));

  LabeledRows corpus = {{profile("a", 5, "excellent reliable"), BinaryLabel::kPositive},
                        {profile("b", 4, "excellent careful"), BinaryLabel::kPositive},
                        {profile("c", 1, "poor sloppy"), BinaryLabel::kNegative},
                        {profile("d", 0, "poor careless"), BinaryLabel::kNegative}};
  baseline::TrainingConfig tc;
  tc.epochs = 300;
  tc.learning_rate = 0.5;
  const auto trained = baseline::train(corpus, tc);
  std::size_t correct = 0;
  for (const auto& p : baseline::score_rows(trained.model, corpus)) {
    correct += (p.probability >= 0.5) == (p.true_label == BinaryLabel::kPositive);
  }
  o.require(correct == corpus.size(), "separable corpus accuracy " + std::to_string(correct) + "/4");

  TempDir tmp;
  const auto c = synthetic_run(tmp.path);
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const bool ran = cli::cmd_ingest(c, out, err) == cli::kExitOk && cli::cmd_preprocess(c, out, err) == cli::kExitOk &&
                   cli::cmd_rank(c, out, err) == cli::kExitOk && cli::cmd_train_baseline(c, out, err) == cli::kExitOk;
  const double elapsed = seconds_since(t0);
  o.require(ran, "pipeline failed: " + err.str());
  double acc = 0.0, majority = 1.0;
  if (ran) {
    std::ifstream in(fs::path(c.output_dir) / "train_baseline.json");
    const auto doc = nlohmann::json::parse(in);
    acc = doc["test_accuracy_at_0.5"].get<double>();
    majority = doc["test_majority_baseline"].get<double>();
    o.require(acc > majority, "test accuracy " + std::to_string(acc) + " vs majority " + std::to_string(majority));
  }
  o.require(elapsed < 30.0, "pipeline took " + std::to_string(elapsed) + " s");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "grad rel err %.1e, separable 4/4, test acc %.2f > majority %.2f, %.2f s", worst,
                  acc, majority, elapsed);
    o.detail = buf;
  }
  return o;
}

// --- Determinism ----------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

Outcome determinism() {
  Outcome o;
  TempDir tmp;
  const auto c = synthetic_run(tmp.path);
  std::map<std::string, std::string> runs[2];
  for (auto& run : runs) {
    fs::remove_all(c.output_dir);
    std::ostringstream out, err;
    const bool ok = cli::cmd_rank(c, out, err) == cli::kExitOk && cli::cmd_preprocess(c, out, err) == cli::kExitOk &&
                    cli::cmd_train_baseline(c, out, err) == cli::kExitOk;
    o.require(ok, "pipeline failed: " + err.str());
    run = snapshot(c.output_dir);
  }
  o.require(runs[0].size() >= 10, "expected at least 10 artifacts, got " + std::to_string(runs[0].size()));
  o.require(runs[0] == runs[1], "artifacts differ between runs");
  if (o.pass) o.detail = std::to_string(runs[0].size()) + " artifacts byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"topsis oracle equivalence", topsis_oracle},
      {"topsis dominance", topsis_dominance},
      {"topsis invariances", topsis_invariances},
      {"reference confusion-matrix figures", reference_figures},
      {"auc oracle", auc_oracle},
      {"youden threshold", youden_threshold},
      {"ranking-validation metrics", validation_metrics},
      {"preprocessing", preprocessing},
      {"baseline scorer", baseline_scorer},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
