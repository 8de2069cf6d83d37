#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rledtw/io.hpp"

using namespace rledtw;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("rledtw_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = (path_ / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }

private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return slurp(std::string(RLEDTW_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST(LoadUcr, CommaLine) {
  std::istringstream in("1,0.5,0.5,2.0\n");
  const auto ds = parse_ucr(in);
  ASSERT_EQ(ds.series.size(), 1u);
  EXPECT_EQ(ds.labels[0], "1");
  EXPECT_EQ(ds.series[0], (TimeSeries{0.5, 0.5, 2.0}));
}

TEST(LoadUcr, TabSeparatedIsIdentical) {
  std::istringstream comma("1,0.5,0.5,2.0\n2,1,2,3\n");
  std::istringstream tab("1\t0.5\t0.5\t2.0\n\n2\t1\t2\t3\n");
  const auto a = parse_ucr(comma);
  const auto b = parse_ucr(tab);
  EXPECT_EQ(a.series, b.series);
  EXPECT_EQ(a.labels, b.labels);
  std::istringstream spaces("  1  0.5 0.5   2.0\n");
  EXPECT_EQ(parse_ucr(spaces).series, std::vector<TimeSeries>{a.series[0]});
}

TEST(LoadUcr, EmptyFileIsError) {
  std::istringstream in("\n  \n");
  try {
    parse_ucr(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no series"), std::string::npos);
  }
}

TEST(LoadUcr, NonNumericReportsLine) {
  std::istringstream in("1,2,3\n1,2,abc\n");
  try {
    parse_ucr(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadUcr, InconsistentFieldCountSkipped) {
  std::istringstream in("1,2,3\n1,2\n2,5,6\n");
  const auto ds = parse_ucr(in);
  EXPECT_EQ(ds.series.size(), 2u);
  ASSERT_EQ(ds.warnings.size(), 1u);
  EXPECT_NE(ds.warnings[0].find("line 2"), std::string::npos);
}

TEST(Csv, RoundTripPreservesAggregates) {
  std::vector<BenchRecord> records;
  for (int i = 0; i < 12; ++i) {
    BenchRecord r;
    r.dataset = "synth";
    r.rho = i % 2 ? 0.9 : 0.99;
    r.k = i % 2 ? 102 : 10;
    r.algorithm = i % 3 == 0 ? "rledtw" : (i % 3 == 1 ? "bdtw_upper" : "naive");
    r.pair = static_cast<std::size_t>(i);
    r.wall_ns = 1000 + i;
    r.distance = 1.0 / (i + 3);
    r.squared_cost = r.distance * r.distance;
    if (i % 3 == 0) r.kappa = static_cast<std::size_t>(100 + i);
    r.speedup = 0.1 * (i + 1) / 3.0;
    if (i % 3 == 1 && i != 4) r.error_pct = 7.0 / (i + 1);
    records.push_back(r);
  }
  std::stringstream ss;
  write_csv(ss, records);
  const auto back = read_csv(ss);
  const auto s1 = summarize(records, 1024);
  const auto s2 = summarize(back, 1024);
  ASSERT_EQ(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].mean_speedup, s2[i].mean_speedup);
    EXPECT_EQ(s1[i].median_speedup, s2[i].median_speedup);
    EXPECT_EQ(s1[i].mean_error_pct, s2[i].mean_error_pct);
    EXPECT_EQ(s1[i].mean_kappa, s2[i].mean_kappa);
  }
}

TEST(Csv, RejectsWrongHeader) {
  std::istringstream in("a,b,c\n");
  EXPECT_THROW(read_csv(in), ParseError);
}

TEST(Cli, DtwReferenceGolden) {
  const auto r = run({"dtw", "--rle", "--algo", "rledtw", "0:2 1:4 2:10", "1:4 0:3 2:5 1:5"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(first + "\n", golden("reference_distance.txt"));
  EXPECT_EQ(second.rfind("kappa=", 0), 0u);
}

TEST(Cli, DtwAlgorithmsAgree) {
  for (const std::string algo : {"naive", "boundary", "rledtw"}) {
    const auto r = run({"dtw", "--rle", "--algo", algo, "0:2 1:4 2:10", "1:4 0:3 2:5 1:5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n') + 1), golden("reference_distance.txt")) << algo;
  }
}

TEST(Cli, DtwIdenticalIsZero) {
  const auto r = run({"dtw", "--rle", "3:2 1:5", "3:2 1:5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "0\n");
}

TEST(Cli, DtwBdtwSquareBlocks) {
  const auto r = run({"dtw", "--rle", "--algo", "bdtw", "0:3 4:3 1:3", "2:3 0:3"});
  EXPECT_EQ(r.code, 0);
  std::istringstream ss(r.out);
  std::string lo, hi;
  ss >> lo >> hi;
  EXPECT_EQ(lo, hi);
}

TEST(Cli, DtwFromUcrFiles) {
  TempDir dir;
  const auto a = dir.file("a.csv", "1,0,0,1,1,1,1,2,2,2,2,2,2,2,2,2,2\n");
  const auto b = dir.file("b.tsv", "1\t1\t1\t1\t1\t0\t0\t0\t2\t2\t2\t2\t2\t1\t1\t1\t1\t1\n");
  for (const std::string algo : {"naive", "rledtw"}) {
    const auto r = run({"dtw", "--algo", algo, a, b});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n') + 1), golden("reference_distance.txt"));
  }
}

TEST(Cli, DtwErrorsExitTwo) {
  EXPECT_EQ(run({"dtw", "--rle", "1:x", "1:1"}).code, 2);
  EXPECT_EQ(run({"dtw", "--rle", "--algo", "fast", "1:1", "1:1"}).code, 2);
  EXPECT_EQ(run({"dtw", "/nonexistent/file", "/nonexistent/other"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, CompressGolden) {
  TempDir dir;
  const auto in = dir.file("d.csv", "1,1,1,5,5\n");
  const auto out = dir.file("d.rle");
  const auto r = run({"compress", in, "--k", "2", "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), golden("compress_1155_k2.rle"));
  EXPECT_NE(r.err.find("sse=0"), std::string::npos);
}

TEST(Cli, CompressErrors) {
  TempDir dir;
  const auto in = dir.file("d.csv", "1,1,1,5,5\n");
  EXPECT_EQ(run({"compress", in, "--k", "5"}).code, 2);
  EXPECT_EQ(run({"compress", in, "--k", "0"}).code, 2);
  EXPECT_EQ(run({"compress", in}).code, 2);
  EXPECT_EQ(run({"compress", in, "--k", "2", "--ratio", "0.5"}).code, 2);
  EXPECT_EQ(run({"compress", in, "--ratio", "0.25"}).code, 0);
}

TEST(Cli, GenDeterministicAndShaped) {
  TempDir dir;
  const auto a = dir.file("a.tsv");
  const auto b = dir.file("b.tsv");
  EXPECT_EQ(run({"gen", "--kind", "staircase", "--n", "10", "--runs", "2", "--seed", "1", "--count", "1", "--out", a}).code, 0);
  EXPECT_EQ(run({"gen", "--kind", "staircase", "--n", "10", "--runs", "2", "--seed", "1", "--count", "1", "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto ds = load_ucr(a);
  ASSERT_EQ(ds.series.size(), 1u);
  EXPECT_LE(encode(ds.series[0]).size(), 2u);

  const auto flat = run({"gen", "--n", "16", "--runs", "1", "--count", "3"});
  std::istringstream ss(flat.out);
  for (const auto& s : parse_ucr(ss).series) EXPECT_EQ(encode(s).size(), 1u);

  const auto rw = run({"gen", "--kind", "randomwalk-then-apca", "--n", "50", "--runs", "5", "--count", "2"});
  std::istringstream rs(rw.out);
  for (const auto& s : parse_ucr(rs).series) EXPECT_LE(encode(s).size(), 5u);

  EXPECT_EQ(run({"gen", "--n", "3", "--runs", "4"}).code, 2);
  EXPECT_EQ(run({"gen", "--kind", "sine"}).code, 2);
}

TEST(Cli, BenchCsvRowsAndSvg) {
  TempDir dir;
  const auto data = dir.file("synth.tsv");
  ASSERT_EQ(run({"gen", "--n", "64", "--runs", "8", "--count", "12", "--seed", "3", "--out", data}).code, 0);
  const auto csv = dir.file("out.csv");
  const auto svg = dir.file("out.svg");
  const auto r = run({"bench", data, "--ratios", "0.9,0.99", "--sample", "10", "--reps", "1", "--algos", "naive,rledtw",
                      "--csv", csv, "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  const auto records = read_csv(in);
  EXPECT_EQ(records.size(), 2u * 45u * 2u);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
  EXPECT_NE(slurp(svg).find("rledtw"), std::string::npos);
  std::string header;
  std::ifstream(csv) >> header;
  EXPECT_EQ(header, std::string(kCsvHeader));
}

TEST(Cli, BenchNaiveOnlyUnitSpeedup) {
  TempDir dir;
  const auto data = dir.file("synth.tsv");
  ASSERT_EQ(run({"gen", "--n", "32", "--runs", "4", "--count", "4", "--out", data}).code, 0);
  const auto csv = dir.file("out.csv");
  ASSERT_EQ(run({"bench", data, "--ratios", "0.5", "--reps", "1", "--algos", "naive", "--csv", csv}).code, 0);
  std::ifstream in(csv);
  for (const auto& rec : read_csv(in)) EXPECT_EQ(rec.speedup, 1.0);
}

TEST(Cli, BenchFailureLeavesNoFiles) {
  TempDir dir;
  const auto mixed = dir.file("mixed.tsv", "1\t1\t2\t3\n");  // a single series
  const auto csv = dir.file("out.csv");
  const auto svg = dir.file("out.svg");
  EXPECT_EQ(run({"bench", mixed, "--csv", csv, "--svg", svg}).code, 2);
  EXPECT_FALSE(fs::exists(csv));
  EXPECT_FALSE(fs::exists(svg));
  EXPECT_EQ(run({"bench", mixed, "--ratios", "1.5"}).code, 2);
  EXPECT_EQ(run({"bench", mixed, "--algos", "awarp"}).code, 2);
}
