#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "core/experiment.hpp"
#include "core/io.hpp"
#include "core/rng.hpp"
#include "core/simgen.hpp"

using namespace spca;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path d = fs::temp_directory_path() /
               ("spca_harness_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::create_directories(d);
  return d;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csv round-trip is bit exact") {
  const fs::path dir = temp_dir();
  GaussianStream g(71);
  const Matrix x = g.draw_matrix(7, 5);
  const fs::path file = dir / "x.csv";
  save_matrix_csv(x, file.string());
  Matrix y = load_matrix_csv(file.string());
  REQUIRE(y.rows() == 7);
  REQUIRE(y.cols() == 5);
  CHECK(x.data() == y.data());
}

TEST_CASE("csv errors carry a location") {
  const fs::path dir = temp_dir();
  const fs::path ragged = dir / "ragged.csv";
  write_text(ragged, "a,b\n1,2\n3\n");
  CHECK_THROWS_AS(load_matrix_csv(ragged.string()), ParseError);
  const fs::path nonnum = dir / "nonnum.csv";
  write_text(nonnum, "a,b\n1,zap\n");
  CHECK_THROWS_AS(load_matrix_csv(nonnum.string()), ParseError);
  const fs::path headeronly = dir / "empty.csv";
  write_text(headeronly, "a,b\n");
  CHECK_THROWS_AS(load_matrix_csv(headeronly.string()), ParseError);
  CHECK_THROWS_AS(load_matrix_csv((dir / "missing.csv").string()), ParseError);
}

TEST_CASE("config parsing") {
  const fs::path dir = temp_dir();
  const fs::path cfg_path = dir / "run.cfg";
  write_text(cfg_path,
             "# comment\n"
             "experiment = montecarlo\n"
             "methods = PCA, PMD-PD, GPCA-O\n"
             "components = 4\n"
             "repetitions = 3\n"
             "seed = 99\n"
             "center = true\n"
             "output_dir = out\n"
             "PMD-PD.c2 = 1.7  # inline comment\n");
  ExperimentConfig cfg = parse_config_file(cfg_path.string());
  CHECK(cfg.experiment == ExperimentKind::kMontecarlo);
  REQUIRE(cfg.methods.size() == 3);
  CHECK(cfg.methods[0] == Method::kPca);
  CHECK(cfg.methods[1] == Method::kPmdPd);
  CHECK(cfg.methods[2] == Method::kGpcaO);
  CHECK(cfg.ncomp == 4);
  CHECK(cfg.repetitions == 3);
  CHECK(cfg.seed == 99);
  CHECK(cfg.center);
  CHECK(cfg.output_dir == "out");
  REQUIRE(cfg.knob_overrides.count(Method::kPmdPd) == 1);
  CHECK(cfg.knob_overrides.at(Method::kPmdPd) == doctest::Approx(1.7));

  const fs::path bad = dir / "bad.cfg";
  write_text(bad, "experiment montecarlo\n");
  CHECK_THROWS_AS(parse_config_file(bad.string()), ParseError);
  write_text(bad, "nonsense = 1\n");
  CHECK_THROWS_AS(parse_config_file(bad.string()), ParseError);
  write_text(bad, "methods = XYZ\n");
  CHECK_THROWS_AS(parse_config_file(bad.string()), ParseError);
}

TEST_CASE("fixed-example experiment produces one record per method") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kOrthogonal;
  ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.records.size() == 9);
  for (const auto& r : res.records) {
    CAPTURE(r.error);
    CHECK_FALSE(r.failed);
    CHECK(r.naive.score_mode == ScoreMode::kNaive);
    CHECK(r.corrected.score_mode == ScoreMode::kCorrected);
    CHECK(r.corrected.tot_pt == doctest::Approx(1.0).epsilon(1e-8));
  }
  REQUIRE(res.simulated_macs.has_value());
  CHECK(*res.simulated_macs == doctest::Approx(0.0));
}

TEST_CASE("Monte Carlo experiment repeats with distinct seeds") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kMontecarlo;
  cfg.methods = {Method::kPca, Method::kPmdPd};
  cfg.repetitions = 2;
  cfg.seed = 5;
  cfg.knob_overrides[Method::kPmdPd] = 3.0;
  ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.records.size() == 4);
  CHECK(res.records[0].seed == 5);
  CHECK(res.records[2].seed == 6);
  // Identical configuration reruns bit-identically.
  ExperimentResult res2 = run_experiment(cfg);
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    CHECK(res.records[i].naive.rss == res2.records[i].naive.rss);
    CHECK(res.records[i].naive.tot_qr == res2.records[i].naive.tot_qr);
  }
}

TEST_CASE("file experiment fits a CSV input") {
  const fs::path dir = temp_dir();
  GaussianStream g(72);
  const Matrix x = g.draw_matrix(10, 6);
  const fs::path file = dir / "data.csv";
  save_matrix_csv(x, file.string());
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kFile;
  cfg.input_path = file.string();
  cfg.methods = {Method::kPca, Method::kPmdPd};
  cfg.ncomp = 2;
  cfg.target_nnz = 6;
  ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.records.size() == 2);
  for (const auto& r : res.records) CHECK_FALSE(r.failed);
  // Without a target or overrides the sparse fit is unconstrained —
  // rejected to avoid silently meaningless knobs.
  ExperimentConfig bad = cfg;
  bad.target_nnz.reset();
  CHECK_THROWS_AS(run_experiment(bad), InvalidInput);
}

TEST_CASE("table emission includes published values and gaps") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kNonorthogonal;
  cfg.output_dir = (temp_dir() / "tables").string();
  ExperimentResult res = run_and_emit(cfg);
  const std::string t1 = read_text(fs::path(cfg.output_dir) / "table1.csv");
  CHECK(t1.find("MACS") != std::string::npos);
  CHECK(t1.find("MACS (published)") != std::string::npos);
  CHECK(t1.find("MACS (gap)") != std::string::npos);
  CHECK(t1.find("0.4300") != std::string::npos);  // published baseline
  const std::string t2 = read_text(fs::path(cfg.output_dir) / "table2.csv");
  CHECK(t2.find("TotPT*") != std::string::npos);
  CHECK(t2.find("2.5494") != std::string::npos);  // published sPCA TotPT
  const std::string rep =
      read_text(fs::path(cfg.output_dir) / "run_report.json");
  CHECK(rep.find("\"method\"") != std::string::npos);
  // Emission with a missing sparse method is refused.
  std::vector<RunRecord> only_pca = {res.records[0]};
  ExperimentResult partial;
  partial.records = only_pca;
  partial.simulated_macs = res.simulated_macs;
  partial.simulated_macl = res.simulated_macl;
  CHECK_THROWS_AS(emit_table(partial, "table1", cfg.output_dir + "/x.csv"),
                  MissingData);
  CHECK_THROWS_AS(emit_table(res, "table9", cfg.output_dir + "/x.csv"),
                  InvalidInput);
}

TEST_CASE("box-plot emission writes long-format rows") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kMontecarlo;
  cfg.methods = {Method::kPca};
  cfg.repetitions = 2;
  cfg.output_dir = (temp_dir() / "mc").string();
  run_and_emit(cfg);
  const std::string box =
      read_text(fs::path(cfg.output_dir) / "boxplot_rss.csv");
  CHECK(box.find("seed,method,score_mode,statistic,value") == 0);
  CHECK(box.find(",PCA,naive,rss,") != std::string::npos);
  CHECK(box.find(",PCA,corrected,rss,") != std::string::npos);
}

TEST_CASE("column centering removes the means") {
  GaussianStream g(73);
  Matrix x = g.draw_matrix(9, 4);
  for (std::size_t i = 0; i < 9; ++i) x(i, 2) += 100.0;
  Matrix c = center_columns(x);
  for (std::size_t j = 0; j < 4; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < 9; ++i) mean += c(i, j);
    CHECK(std::fabs(mean / 9.0) < 1e-12);
  }
}
