// Acceptance gate: runs the ten release criteria and prints one line each,
// [PASS]/[FAIL], with measured numbers. Exits nonzero if any criterion fails.
//
// argv[1] must point at the eddeg CLI binary; criteria 9 and 10 drive it as a
// subprocess to check exit codes and byte-level report determinism.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <eddeg/combinatorics.hpp>
#include <eddeg/descent.hpp>
#include <eddeg/errors.hpp>
#include <eddeg/io.hpp>
#include <eddeg/linalg.hpp>
#include <eddeg/models.hpp>
#include <eddeg/rng.hpp>
#include <eddeg/stationary.hpp>

using namespace edd;
using core::Matrix;
using core::SymmetricMatrix;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kCap = core::kEnumerationCap;
constexpr double kGap = 1e-8;

std::string g_tool;  // path to the eddeg binary

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<stationary::StationaryPoint> enumerate(
    const models::ModelHandle& model, const Matrix& A) {
  return stationary::enumerate_stationary(model, A, kGap, kCap);
}

Matrix seeded_spd(int k, std::uint64_t seed) {
  const Matrix R = core::random_rect(k + 2, k, seed).mat();
  return R.transpose() * R + 0.5 * Matrix::Identity(k, k);
}

// Runs a shell command, returns its exit status (-1 if it did not exit).
int run_cmd(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& note) {
    if (!cond) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << note;
    }
  }
};

// ---- criteria ----------------------------------------------------------------

Criterion criterion1_flag_count_law() {
  Criterion c;
  const models::ModelHandle model{models::FlagSpec(6, {1, 3}, {2, 1, 0})};
  const auto t0 = Clock::now();
  double worst_stat = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix A = core::random_symmetric(6, seed).mat();
    const auto pts = enumerate(model, A);
    const double scale = 1.0 + A.norm();
    if (pts.size() != 60)
      c.require(false, "seed " + std::to_string(seed) + " count " +
                           std::to_string(pts.size()) + " != 60");
    for (const auto& p : pts)
      worst_stat = std::max(worst_stat, p.grad_residual / scale);
  }
  c.require(worst_stat <= 1e-7, "stationarity residual above 1e-7");
  const double elapsed = seconds_since(t0);
  c.require(elapsed < 2.0, "runtime " + std::to_string(elapsed) + " s >= 2 s");
  c.detail << (c.detail.str().empty() ? "" : "; ") << "10x count 60, worst rel "
           << worst_stat << ", " << elapsed << " s";
  return c;
}

Criterion criterion2_grassmann_count_law() {
  Criterion c;
  const models::ModelHandle model{models::GrassmannSpec(8, 3)};
  double worst_min_dist = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix A = core::random_symmetric(8, seed).mat();
    const auto pts = enumerate(model, A);
    const double scale = 1.0 + A.norm();
    if (pts.size() != 56)
      c.require(false, "seed " + std::to_string(seed) + " count " +
                           std::to_string(pts.size()) + " != 56");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double d = (pts[i].X - pts[j].X).norm() / scale;
        worst_min_dist = std::min(worst_min_dist, d);
        if (d <= 1e-6) {
          c.require(false, "pair closer than 1e-6 relative");
          break;
        }
      }
  }
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "10x count 56, min rel distance " << worst_min_dist;
  return c;
}

Criterion criterion3_gram_target_independence() {
  Criterion c;
  for (std::uint64_t b_seed : {101u, 202u}) {
    const models::ModelHandle model{
        models::StiefelSpec(6, 4, SymmetricMatrix(seeded_spd(4, b_seed)))};
    const std::uint64_t degree = models::ed_degree(model, kCap);
    c.require(degree == 16, "degree formula != 16");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Matrix A = core::random_rect(6, 4, seed).mat();
      const auto pts = enumerate(model, A);
      if (pts.size() != 16)
        c.require(false, "B-seed " + std::to_string(b_seed) + " anchor seed " +
                             std::to_string(seed) + " count " +
                             std::to_string(pts.size()) + " != 16");
    }
  }
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "2 Gram targets x 10 anchors, all counts 16";
  return c;
}

Criterion criterion4_block_nested_count_law() {
  Criterion c;
  const models::SchubertSpec spec(7, 1, 3, 5, core::random_orthogonal(7, 11),
                                  1.0, 0.0);
  const models::ModelHandle model{spec};
  const models::ModelHandle ambient{models::GrassmannSpec(7, 3, 1.0, 0.0)};
  double worst_block = 0.0, worst_ambient = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix A = core::random_symmetric(7, seed).mat();
    const auto pts = enumerate(model, A);
    const double scale = 1.0 + A.norm();
    if (pts.size() != 6)
      c.require(false, "seed " + std::to_string(seed) + " count " +
                           std::to_string(pts.size()) + " != 6");
    for (const auto& p : pts) {
      const double block_res = models::membership_residual(model, p.X);
      const double ambient_res = models::membership_residual(ambient, p.X);
      worst_block = std::max(worst_block, block_res / scale);
      worst_ambient = std::max(worst_ambient, ambient_res / scale);
    }
  }
  c.require(worst_block <= 1e-8, "block-structure residual above 1e-8");
  c.require(worst_ambient <= 1e-8,
            "ambient quadratic-model residual above 1e-8");
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "10x count 6, worst block res " << worst_block
           << ", worst ambient res " << worst_ambient;
  return c;
}

Criterion criterion5_special_cases() {
  Criterion c;
  // unit sphere in R^4: the two stationary points are the normalized anchor
  // and its antipode
  const models::ModelHandle sphere{models::StiefelSpec(4, 1)};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix A = core::random_rect(4, 1, seed).mat();
    const auto pts = enumerate(sphere, A);
    c.require(pts.size() == 2, "sphere count != 2");
    const Matrix unit = A / A.norm();
    c.require((pts[0].X - unit).norm() <= 1e-9, "plus point not A/|A|");
    c.require((pts[1].X + unit).norm() <= 1e-9, "minus point not -A/|A|");
  }
  // square case: 8 stationary points, every one orthogonal
  const models::ModelHandle square{models::StiefelSpec(3, 3)};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix A = core::random_rect(3, 3, seed).mat();
    const auto pts = enumerate(square, A);
    c.require(pts.size() == 8, "square count != 8");
    for (const auto& p : pts)
      c.require((p.X.transpose() * p.X - Matrix::Identity(3, 3)).norm() <= 1e-9,
                "point not orthogonal within 1e-9");
  }
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "sphere 2x antipodal, square 8x orthogonal";
  return c;
}

// Independent spectral reconstructions of the closed-form minimizers.
Matrix expected_nearest_flag(const models::FlagSpec& f, const Matrix& A) {
  const core::EigenPair e = core::sym_eig(SymmetricMatrix(A), kGap);
  Matrix d = Matrix::Zero(f.n(), f.n());
  int row = 0;
  for (std::size_t j = 0; j < f.block_sizes().size(); ++j)
    for (int r = 0; r < f.block_sizes()[j]; ++r) d(row, row) = f.bs()[j], ++row;
  return e.Q * d * e.Q.transpose();
}

Matrix expected_nearest_grassmann(const models::GrassmannSpec& g,
                                  const Matrix& A) {
  const core::EigenPair e = core::sym_eig(SymmetricMatrix(A), kGap);
  Matrix X = g.b() * Matrix::Identity(g.n(), g.n());
  for (int i = 0; i < g.k(); ++i)
    X += (g.a() - g.b()) * e.Q.col(i) * e.Q.col(i).transpose();
  return X;
}

Matrix expected_nearest_schubert(const models::SchubertSpec& s,
                                 const Matrix& A) {
  const int off = s.k() + (s.n() - s.m());
  const Matrix rotated = s.Q().transpose() * A * s.Q();
  const Matrix inner = rotated.block(off, off, s.inner_size(), s.inner_size());
  const core::EigenPair e =
      core::sym_eig(SymmetricMatrix((inner + inner.transpose()) / 2.0), kGap);
  Matrix Xi = s.b() * Matrix::Identity(s.inner_size(), s.inner_size());
  for (int i = 0; i < s.inner_rank(); ++i)
    Xi += (s.a() - s.b()) * e.Q.col(i) * e.Q.col(i).transpose();
  return models::schubert_embed(s, Xi);
}

Criterion criterion6_nearest_optimality() {
  Criterion c;
  int checked = 0;
  const auto check_model = [&](const models::ModelHandle& model,
                               const Matrix& A, const Matrix* expected) {
    const auto pts = enumerate(model, A);
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].objective < pts[best].objective) best = i;
    const auto nearest = stationary::nearest_point(model, A, kGap);
    const double scale = 1.0 + A.norm();
    c.require(nearest.label == pts[best].label,
              "nearest label != argmin label");
    c.require((nearest.X - pts[best].X).norm() <= 1e-10 * scale,
              "nearest differs from argmin matrix");
    if (expected != nullptr)
      c.require((nearest.X - *expected).cwiseAbs().maxCoeff() <= 1e-10 * scale,
                "nearest differs from the spectral construction");
    ++checked;
  };

  const models::FlagSpec flag(6, {1, 3}, {2, 1, 0});
  const models::GrassmannSpec gr(8, 3);
  const models::SchubertSpec sch(7, 1, 3, 5, core::random_orthogonal(7, 11),
                                 1.0, 0.0);
  const models::StiefelSpec st(6, 4, SymmetricMatrix(seeded_spd(4, 101)));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix As = core::random_symmetric(6, seed).mat();
    const Matrix A8 = core::random_symmetric(8, seed).mat();
    const Matrix A7 = core::random_symmetric(7, seed).mat();
    const Matrix Ar = core::random_rect(6, 4, seed).mat();
    const Matrix ef = expected_nearest_flag(flag, As);
    const Matrix eg = expected_nearest_grassmann(gr, A8);
    const Matrix es = expected_nearest_schubert(sch, A7);
    check_model(flag, As, &ef);
    check_model(gr, A8, &eg);
    check_model(sch, A7, &es);
    check_model(st, Ar, nullptr);  // argmin comparison only
  }
  c.detail << (c.detail.str().empty() ? "" : "; ") << checked
           << " trials, labels and matrices agree";
  return c;
}

Criterion criterion7_section_consistency() {
  Criterion c;
  const models::ModelHandle gr{models::GrassmannSpec(5, 2)};
  const models::ModelHandle sch{models::SchubertSpec(5, 0, 2, 5)};
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix A = core::random_symmetric(5, seed).mat();
    const auto ng = stationary::nearest_point(gr, A, kGap);
    const auto ns = stationary::nearest_point(sch, A, kGap);
    const double d = (ng.X - ns.X).norm();
    worst = std::max(worst, d);
    c.require(d <= 1e-10, "seed " + std::to_string(seed) + " distance " +
                              std::to_string(d));
  }
  c.detail << (c.detail.str().empty() ? "" : "; ") << "worst distance "
           << worst;
  return c;
}

Criterion criterion8_oracle_completeness() {
  Criterion c;
  struct Config {
    const char* name;
    models::ModelHandle model;
  };
  const std::vector<Config> configs = {
      {"projector(1,3)", models::GrassmannSpec(3, 1)},
      {"projector(2,4)", models::GrassmannSpec(4, 2)},
      {"flag(1,2|4)", models::FlagSpec(4, {1, 2})},
      {"gram(2,3)", models::StiefelSpec(3, 2)},
  };
  const auto t0 = Clock::now();
  bool all_rates_ok = true;
  for (std::size_t cfg = 0; cfg < configs.size(); ++cfg) {
    const auto& model = configs[cfg].model;
    const int degree = static_cast<int>(models::ed_degree(model, kCap));
    int complete = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::uint64_t seed =
          core::derive_seed(7000 + 100 * cfg, static_cast<std::uint64_t>(trial));
      Matrix A;
      if (model.kind() == models::ModelKind::stiefel)
        A = core::random_rect(static_cast<int>(model.rows()),
                              static_cast<int>(model.cols()), seed)
                .mat();
      else
        A = core::random_symmetric(static_cast<int>(model.rows()), seed).mat();
      try {
        const auto pts = enumerate(model, A);
        const auto ms = descent::multistart(model, A, 40 * degree,
                                            core::derive_seed(seed, 1), {},
                                            1e-4);
        const auto report =
            descent::match_points(ms.representatives, pts, 1e-4, A.norm());
        if (report.complete()) ++complete;
      } catch (const core::Error&) {
        // a degenerate draw counts as an unrecovered trial
      }
    }
    if (complete < 95) all_rates_ok = false;
    c.detail << (cfg ? ", " : "") << configs[cfg].name << " " << complete
             << "/100";
  }
  const double elapsed = seconds_since(t0);
  c.detail << ", " << elapsed << " s";
  c.require(all_rates_ok, "recovery below 95/100");
  c.require(elapsed < 60.0, "runtime >= 60 s");
  return c;
}

Criterion criterion9_degeneracy_exit_codes() {
  Criterion c;
  // identity anchors for the three symmetric-ambient models
  io::write_matrix_json("acc_id4.json", Matrix::Identity(4, 4));
  io::write_matrix_json("acc_id6.json", Matrix::Identity(6, 6));
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"enumerate --model grassmann --n 4 --k 2 --anchor acc_id4.json",
       "not pairwise distinct"},
      {"enumerate --model flag --n 4 --ks 1,2 --anchor acc_id4.json",
       "not pairwise distinct"},
      {"enumerate --model schubert --n 6 --k 1 --l 2 --m 4 --anchor "
       "acc_id6.json",
       "not pairwise distinct"},
  };
  for (const auto& [args, needle] : cases) {
    const int code = run_cmd(g_tool + " " + args + " >acc_out.txt 2>acc_err.txt");
    c.require(code == 2, "expected exit 2 for: " + args + " (got " +
                             std::to_string(code) + ")");
    const std::string err = slurp("acc_err.txt");
    c.require(err.find(needle) != std::string::npos,
              "missing predicate in message for: " + args);
  }

  // constructed collision: Gram target diag(1,4) with anchor sigmas (2,1)
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = 1.0;
  B(1, 1) = 4.0;
  Matrix A = Matrix::Zero(3, 2);
  A(0, 0) = 2.0;
  A(1, 1) = 1.0;
  io::write_matrix_json("acc_B.json", B);
  io::write_matrix_json("acc_A.json", A);
  const int code = run_cmd(g_tool +
                           " enumerate --model stiefel --n 3 --k 2 "
                           "--B-file acc_B.json --anchor acc_A.json "
                           ">acc_out.txt 2>acc_err.txt");
  c.require(code == 2, "collision case: expected exit 2, got " +
                           std::to_string(code));
  const std::string err = slurp("acc_err.txt");
  c.require(err.find("collision") != std::string::npos,
            "collision message missing its predicate");
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "4 degenerate inputs all exit 2 with named predicates";
  return c;
}

Criterion criterion10_report_determinism() {
  Criterion c;
  const std::string base =
      " certify --model grassmann --n 5 --k 2 --trials 5 --seed 31";
  c.require(run_cmd(g_tool + base + " --output acc_r1.json") == 0,
            "first certify run failed");
  c.require(run_cmd(g_tool + base + " --output acc_r2.json") == 0,
            "second certify run failed");
  c.require(!slurp("acc_r1.json").empty(), "empty report");
  c.require(slurp("acc_r1.json") == slurp("acc_r2.json"),
            "reports differ between identical runs");

  const std::string oracle =
      " certify --model grassmann --n 3 --k 1 --trials 3 --seed 5 --oracle "
      "--starts 30";
  c.require(run_cmd(g_tool + oracle + " --output acc_o1.json") <= 1,
            "oracle certify run failed");
  c.require(run_cmd(g_tool + oracle + " --output acc_o2.json") <= 1,
            "oracle certify rerun failed");
  c.require(slurp("acc_o1.json") == slurp("acc_o2.json"),
            "oracle reports differ between identical runs");
  c.detail << (c.detail.str().empty() ? "" : "; ")
           << "byte-identical reports, with and without the oracle";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-eddeg-binary>\n";
    return 2;
  }
  g_tool = argv[1];

  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const std::vector<Entry> entries = {
      {"count law, nested-spectrum model (60 per anchor)",
       criterion1_flag_count_law},
      {"count law, projector model (56 per anchor)",
       criterion2_grassmann_count_law},
      {"count law, Gram-constrained model, target independence (16)",
       criterion3_gram_target_independence},
      {"count law, block-nested model (6) with double membership",
       criterion4_block_nested_count_law},
      {"special cases: sphere antipodes and square orthogonal set",
       criterion5_special_cases},
      {"nearest point equals enumeration argmin and spectral construction",
       criterion6_nearest_optimality},
      {"trivial nesting matches the projector nearest point",
       criterion7_section_consistency},
      {"multistart oracle recovers every stationary point",
       criterion8_oracle_completeness},
      {"degenerate inputs exit 2 with named predicates",
       criterion9_degeneracy_exit_codes},
      {"certification reports are byte-identical across reruns",
       criterion10_report_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Criterion result;
    try {
      result = entries[i].fn();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail << "exception: " << e.what();
    }
    if (!result.ok) ++failures;
    std::cout << (result.ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1)
              << ": " << entries[i].name;
    const std::string detail = result.detail.str();
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n" << std::flush;
  }
  std::cout << (10 - failures) << "/10 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
