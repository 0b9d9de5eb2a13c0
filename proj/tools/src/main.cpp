// eddeg: certifier and toolbox for the matrix-model nearest-point problem.
//
// Subcommands
//   degree     print the stationary-point count and the model dimension
//   enumerate  list every stationary point for an anchor as JSON
//   nearest    print the closed-form nearest point as JSON
//   certify    run seeded trials and emit a machine-checkable report
//
// Exit codes: 0 success (certify: pass), 1 certification failure, 2 invalid
// descriptor or degenerate input, 3 enumeration exceeds the item cap,
// 4 internal cross-check mismatch.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <eddeg/combinatorics.hpp>
#include <eddeg/descent.hpp>
#include <eddeg/errors.hpp>
#include <eddeg/io.hpp>
#include <eddeg/models.hpp>
#include <eddeg/rng.hpp>
#include <eddeg/stationary.hpp>

namespace {

using edd::core::Matrix;
using edd::io::format_double;

constexpr double kTolDistinct = 1e-6;
constexpr double kTolCluster = 1e-4;
constexpr double kTolMatch = 1e-4;
constexpr int kMaxResamples = 5;

#ifndef EDDEG_VERSION
#define EDDEG_VERSION "0.0.0"
#endif

struct Options {
  std::string model;
  int n = 0;
  int k = -1;
  int l = -1;
  int m = -1;
  std::vector<int> ks;
  std::vector<double> bs;
  double a = 1.0;
  double b = 0.0;
  std::string B_file;
  std::string Q_file;

  std::string anchor_file;
  std::uint64_t seed = 0;
  int trials = 1;
  bool oracle = false;
  int starts = 0;  // 0 = choose 40 * degree

  double tol_mem = 1e-8;
  double tol_stat = 1e-7;
  double tol_gap = 1e-8;

  std::string output;
  std::string format = "json";
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "model family")
      ->required()
      ->check(CLI::IsMember({"flag", "grassmann", "stiefel", "schubert"}));
  cmd->add_option("--n", o.n, "ambient dimension");
  cmd->add_option("--k", o.k, "rank parameter");
  cmd->add_option("--ks", o.ks, "flag ranks, comma separated")->delimiter(',');
  cmd->add_option("--l", o.l, "subspace dimension (schubert)");
  cmd->add_option("--m", o.m, "outer subspace dimension (schubert)");
  cmd->add_option("--bs", o.bs, "model eigenvalues, comma separated")
      ->delimiter(',');
  cmd->add_option("--a-val", o.a, "larger model eigenvalue (default 1)");
  cmd->add_option("--b-val", o.b, "smaller model eigenvalue (default 0)");
  cmd->add_option("--B-file", o.B_file, "SPD Gram matrix file (stiefel)");
  cmd->add_option("--Q-file", o.Q_file, "orthogonal frame file (schubert)");
}

void add_anchor_flags(CLI::App* cmd, Options& o) {
  auto* anchor =
      cmd->add_option("--anchor", o.anchor_file, "anchor matrix file");
  auto* seed =
      cmd->add_option("--seed", o.seed, "seed for the Gaussian anchor sampler");
  anchor->excludes(seed);
}

void add_tol_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-mem", o.tol_mem, "membership tolerance (relative)");
  cmd->add_option("--tol-stat", o.tol_stat,
                  "stationarity tolerance (relative)");
  cmd->add_option("--tol-gap", o.tol_gap, "spectral-gap tolerance (relative)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "write the result here, not stdout");
}

int require_dim(int value, const char* name) {
  if (value < 0)
    throw edd::core::InvalidParameter(std::string("missing required option ") +
                                      name);
  return value;
}

edd::models::ModelHandle build_model(const Options& o) {
  if (o.n <= 0)
    throw edd::core::InvalidParameter("missing or invalid --n");
  if (o.model == "flag") {
    if (o.ks.empty())
      throw edd::core::InvalidParameter("flag model requires --ks");
    if (o.bs.empty()) return edd::models::FlagSpec(o.n, o.ks);
    return edd::models::FlagSpec(o.n, o.ks, o.bs);
  }
  if (o.model == "grassmann")
    return edd::models::GrassmannSpec(o.n, require_dim(o.k, "--k"), o.a, o.b);
  if (o.model == "stiefel") {
    const int k = require_dim(o.k, "--k");
    if (o.B_file.empty()) return edd::models::StiefelSpec(o.n, k);
    return edd::models::StiefelSpec(
        o.n, k, edd::core::SymmetricMatrix(edd::io::read_matrix_json(o.B_file)));
  }
  // schubert
  const int k = require_dim(o.k, "--k");
  const int l = require_dim(o.l, "--l");
  const int m = require_dim(o.m, "--m");
  if (o.Q_file.empty())
    return edd::models::SchubertSpec(o.n, k, l, m, o.a, o.b);
  return edd::models::SchubertSpec(o.n, k, l, m,
                                   edd::io::read_matrix_json(o.Q_file), o.a,
                                   o.b);
}

Matrix sample_anchor(const edd::models::ModelHandle& model,
                     std::uint64_t seed) {
  if (model.kind() == edd::models::ModelKind::stiefel)
    return edd::core::random_rect(model.rows(), model.cols(), seed).mat();
  return edd::core::random_symmetric(model.rows(), seed).mat();
}

// Anchor plus where it came from; sampled anchors may be redrawn on degenerate
// input, file anchors fail loudly.
struct Anchor {
  Matrix A;
  bool from_file = false;
  std::uint64_t seed = 0;
};

Anchor resolve_anchor(const edd::models::ModelHandle& model, const Options& o,
                      std::uint64_t seed) {
  Anchor anchor;
  anchor.from_file = !o.anchor_file.empty();
  anchor.seed = seed;
  anchor.A = anchor.from_file ? edd::io::read_matrix_json(o.anchor_file)
                              : sample_anchor(model, seed);
  return anchor;
}

// Enumerates stationary points, redrawing a sampled anchor up to kMaxResamples
// times when the genericity predicate rejects it.
std::vector<edd::stationary::StationaryPoint> enumerate_with_resample(
    const edd::models::ModelHandle& model, Anchor& anchor, const Options& o) {
  for (int attempt = 0;; ++attempt) {
    try {
      return edd::stationary::enumerate_stationary(
          model, anchor.A, o.tol_gap, edd::core::kEnumerationCap);
    } catch (const edd::core::DegenerateInput&) {
      if (anchor.from_file || attempt >= kMaxResamples) throw;
      anchor.A =
          sample_anchor(model, edd::core::derive_seed(anchor.seed,
                                                      attempt + 1));
    }
  }
}

// ---- deterministic JSON helpers ---------------------------------------------

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

template <typename T>
std::string json_int_list(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string json_real_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw edd::core::IoError("cannot open file for writing: " + o.output);
  out << text;
}

std::string descriptor_json(const Options& o, const Anchor* anchor) {
  std::ostringstream d;
  d << "{\"model\": " << json_str(o.model) << ", \"n\": " << o.n;
  if (o.model == "flag") {
    d << ", \"ks\": " << json_int_list(o.ks);
    if (!o.bs.empty()) d << ", \"bs\": " << json_real_list(o.bs);
  } else if (o.model == "grassmann") {
    d << ", \"k\": " << o.k << ", \"a\": " << format_double(o.a)
      << ", \"b\": " << format_double(o.b);
  } else if (o.model == "stiefel") {
    d << ", \"k\": " << o.k;
    if (!o.B_file.empty()) d << ", \"B_file\": " << json_str(o.B_file);
  } else {
    d << ", \"k\": " << o.k << ", \"l\": " << o.l << ", \"m\": " << o.m
      << ", \"a\": " << format_double(o.a) << ", \"b\": " << format_double(o.b);
    if (!o.Q_file.empty()) d << ", \"Q_file\": " << json_str(o.Q_file);
  }
  if (anchor != nullptr) {
    d << ", \"anchor_source\": "
      << (anchor->from_file ? json_str("file") : json_str("sampled"));
    if (anchor->from_file) d << ", \"anchor_file\": " << json_str(o.anchor_file);
  }
  d << ", \"seed\": " << o.seed << ", \"trials\": " << o.trials;
  if (o.oracle) d << ", \"oracle\": true, \"starts\": " << o.starts;
  d << "}";
  return d.str();
}

// ---- subcommands -------------------------------------------------------------

int cmd_degree(const Options& o) {
  const auto model = build_model(o);
  std::ostringstream out;
  out << "degree " << edd::models::ed_degree(model, edd::core::kEnumerationCap)
      << "\n"
      << "dimension " << edd::models::dimension(model) << "\n";
  emit(o, out.str());
  return 0;
}

int cmd_enumerate(const Options& o) {
  const auto model = build_model(o);
  Anchor anchor = resolve_anchor(model, o, o.seed);
  auto pts = enumerate_with_resample(model, anchor, o);
  std::sort(pts.begin(), pts.end(),
            [](const edd::stationary::StationaryPoint& x,
               const edd::stationary::StationaryPoint& y) {
              if (x.objective != y.objective) return x.objective < y.objective;
              return x.label < y.label;
            });
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << "  {\"label\": " << json_str(pts[i].label)
        << ", \"objective\": " << format_double(pts[i].objective)
        << ", \"grad_residual\": " << format_double(pts[i].grad_residual)
        << ", \"matrix\": " << edd::io::matrix_to_json(pts[i].X) << "}"
        << (i + 1 < pts.size() ? "," : "") << "\n";
  }
  out << "]\n";
  emit(o, out.str());
  return 0;
}

int cmd_nearest(const Options& o) {
  const auto model = build_model(o);
  Anchor anchor = resolve_anchor(model, o, o.seed);
  auto pts = enumerate_with_resample(model, anchor, o);
  const auto nearest =
      edd::stationary::nearest_point(model, anchor.A, o.tol_gap);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].objective < pts[best].objective) best = i;
  const double scale = 1.0 + anchor.A.norm();
  if (nearest.label != pts[best].label ||
      (nearest.X - pts[best].X).norm() > 1e-10 * scale) {
    std::cerr << "error: closed-form nearest point (label " << nearest.label
              << ") disagrees with the enumeration argmin (label "
              << pts[best].label << ")\n";
    return 4;
  }
  std::ostringstream out;
  out << "{\"matrix\": " << edd::io::matrix_to_json(nearest.X)
      << ", \"objective\": " << format_double(nearest.objective)
      << ", \"label\": " << json_str(nearest.label) << "}\n";
  emit(o, out.str());
  return 0;
}

struct TrialRecord {
  std::uint64_t trial_seed = 0;
  std::uint64_t degree_formula = 0;
  std::size_t count_enumerated = 0;
  double max_membership_residual = 0.0;
  double max_stationarity_residual = 0.0;
  std::optional<double> min_pairwise_distance;  // absent when count < 2
  std::string nearest_label;
  bool has_oracle = false;
  int oracle_found = 0;
  int oracle_expected = 0;
  int oracle_matched = 0;
  double oracle_max_distance = 0.0;
  bool oracle_complete = false;
  bool pass = false;
};

std::string trial_json(const TrialRecord& t) {
  std::ostringstream j;
  j << "{\"trial_seed\": " << t.trial_seed
    << ", \"degree_formula\": " << t.degree_formula
    << ", \"count_enumerated\": " << t.count_enumerated
    << ", \"max_membership_residual\": "
    << format_double(t.max_membership_residual)
    << ", \"max_stationarity_residual\": "
    << format_double(t.max_stationarity_residual)
    << ", \"min_pairwise_distance\": "
    << (t.min_pairwise_distance ? format_double(*t.min_pairwise_distance)
                                : "null")
    << ", \"nearest_label\": " << json_str(t.nearest_label);
  if (t.has_oracle)
    j << ", \"oracle\": {\"n_found_clusters\": " << t.oracle_found
      << ", \"n_expected\": " << t.oracle_expected
      << ", \"n_matched\": " << t.oracle_matched
      << ", \"max_match_distance\": " << format_double(t.oracle_max_distance)
      << ", \"complete\": " << (t.oracle_complete ? "true" : "false") << "}";
  j << "}";
  return j.str();
}

std::string trial_csv(const TrialRecord& t) {
  std::ostringstream r;
  r << t.trial_seed << "," << t.degree_formula << "," << t.count_enumerated
    << "," << format_double(t.max_membership_residual) << ","
    << format_double(t.max_stationarity_residual) << ","
    << (t.min_pairwise_distance ? format_double(*t.min_pairwise_distance) : "")
    << ",\"" << t.nearest_label << "\",";
  if (t.has_oracle)
    r << t.oracle_found << "," << t.oracle_matched << ","
      << format_double(t.oracle_max_distance) << ","
      << (t.oracle_complete ? "true" : "false");
  else
    r << ",,,";
  return r.str();
}

int cmd_certify(const Options& o) {
  if (o.trials < 1)
    throw edd::core::InvalidParameter("--trials must be at least 1");
  const auto model = build_model(o);
  const std::uint64_t degree =
      edd::models::ed_degree(model, edd::core::kEnumerationCap);

  std::vector<TrialRecord> records;
  Anchor last_anchor;
  bool all_pass = true;
  for (int t = 1; t <= o.trials; ++t) {
    const std::uint64_t trial_seed = o.seed + static_cast<std::uint64_t>(t);
    Anchor anchor = resolve_anchor(model, o, trial_seed);
    auto pts = enumerate_with_resample(model, anchor, o);
    const double scale = 1.0 + anchor.A.norm();

    TrialRecord rec;
    rec.trial_seed = trial_seed;
    rec.degree_formula = degree;
    rec.count_enumerated = pts.size();
    std::size_t best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      rec.max_membership_residual =
          std::max(rec.max_membership_residual,
                   edd::models::membership_residual(model, pts[i].X));
      rec.max_stationarity_residual =
          std::max(rec.max_stationarity_residual, pts[i].grad_residual);
      if (pts[i].objective < pts[best].objective) best = i;
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double d = (pts[i].X - pts[j].X).norm();
        if (!rec.min_pairwise_distance || d < *rec.min_pairwise_distance)
          rec.min_pairwise_distance = d;
      }
    }

    const auto nearest =
        edd::stationary::nearest_point(model, anchor.A, o.tol_gap);
    rec.nearest_label = nearest.label;
    const bool nearest_ok =
        !pts.empty() && nearest.label == pts[best].label &&
        (nearest.X - pts[best].X).norm() <= 1e-10 * scale;

    if (o.oracle) {
      if (o.starts <= 0 && degree > 25'000)
        throw edd::core::InvalidParameter(
            "refusing to auto-pick more than 1e6 oracle starts; pass --starts");
      const int n_starts =
          o.starts > 0 ? o.starts : static_cast<int>(40 * degree);
      const auto ms = edd::descent::multistart(
          model, anchor.A, n_starts,
          edd::core::derive_seed(trial_seed, 1u << 20), {}, kTolCluster);
      const auto match = edd::descent::match_points(ms.representatives, pts,
                                                    kTolMatch, anchor.A.norm());
      rec.has_oracle = true;
      rec.oracle_found = match.n_found_clusters;
      rec.oracle_expected = match.n_expected;
      rec.oracle_matched = static_cast<int>(match.matched_labels.size());
      rec.oracle_max_distance = match.max_match_distance;
      rec.oracle_complete = match.complete();
    }

    rec.pass = rec.count_enumerated == degree &&
               rec.max_membership_residual <= o.tol_mem * scale &&
               rec.max_stationarity_residual <= o.tol_stat * scale &&
               (!rec.min_pairwise_distance ||
                *rec.min_pairwise_distance > kTolDistinct * scale) &&
               nearest_ok;
    all_pass = all_pass && rec.pass;
    records.push_back(std::move(rec));
    last_anchor = std::move(anchor);
  }

  std::ostringstream out;
  if (o.format == "csv") {
    out << "trial_seed,degree_formula,count_enumerated,"
           "max_membership_residual,max_stationarity_residual,"
           "min_pairwise_distance,nearest_label,oracle_found_clusters,"
           "oracle_matched,oracle_max_match_distance,oracle_complete\n";
    for (const auto& rec : records) out << trial_csv(rec) << "\n";
  } else {
    out << "{\n  \"model_descriptor\": " << descriptor_json(o, &last_anchor)
        << ",\n  \"trials\": [\n";
    for (std::size_t i = 0; i < records.size(); ++i)
      out << "    " << trial_json(records[i])
          << (i + 1 < records.size() ? "," : "") << "\n";
    out << "  ],\n  \"pass\": " << (all_pass ? "true" : "false")
        << ",\n  \"tool_version\": " << json_str(EDDEG_VERSION)
        << ",\n  \"tolerances\": {\"membership\": " << format_double(o.tol_mem)
        << ", \"stationarity\": " << format_double(o.tol_stat)
        << ", \"distinctness\": " << format_double(kTolDistinct)
        << ", \"gap\": " << format_double(o.tol_gap)
        << ", \"cluster\": " << format_double(kTolCluster)
        << ", \"match\": " << format_double(kTolMatch) << "}\n}\n";
  }
  emit(o, out.str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"stationary-point counts, enumeration and certification for "
               "matrix-manifold nearest-point problems"};
  app.require_subcommand(1);

  auto* degree = app.add_subcommand(
      "degree", "print the stationary-point count and model dimension");
  add_model_flags(degree, o);
  add_output_flags(degree, o);

  auto* enumerate = app.add_subcommand(
      "enumerate", "list all stationary points for an anchor");
  add_model_flags(enumerate, o);
  add_anchor_flags(enumerate, o);
  add_tol_flags(enumerate, o);
  add_output_flags(enumerate, o);

  auto* nearest =
      app.add_subcommand("nearest", "print the closed-form nearest point");
  add_model_flags(nearest, o);
  add_anchor_flags(nearest, o);
  add_tol_flags(nearest, o);
  add_output_flags(nearest, o);

  auto* certify = app.add_subcommand(
      "certify", "run seeded trials and emit a pass/fail report");
  add_model_flags(certify, o);
  add_anchor_flags(certify, o);
  add_tol_flags(certify, o);
  add_output_flags(certify, o);
  certify->add_option("--trials", o.trials, "number of trials")
      ->check(CLI::PositiveNumber);
  certify->add_flag("--oracle", o.oracle,
                    "run the multistart oracle and match against enumeration");
  certify->add_option("--starts", o.starts,
                      "oracle starts per trial (default 40 x degree)");
  certify->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Environment override for scripted runs.
  if (const char* env = std::getenv("EDDEG_SEED"); env != nullptr && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') {
      std::cerr << "error: EDDEG_SEED is not an integer: " << env << "\n";
      return 2;
    }
    o.seed = v;
  }

  try {
    if (degree->parsed()) return cmd_degree(o);
    if (enumerate->parsed()) return cmd_enumerate(o);
    if (nearest->parsed()) return cmd_nearest(o);
    return cmd_certify(o);
  } catch (const edd::core::Overflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const edd::core::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
