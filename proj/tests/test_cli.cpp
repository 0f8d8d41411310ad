#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "krein/cli.hpp"

namespace krein::cli {
namespace {

constexpr const char* kOne =
    R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.5,"r0":0.8,"N_list":[16]})";
constexpr const char* kLinear =
    R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]],[[[3,0]]]],"r":0.5,"r0":0.8,"N_list":[16,32,64]})";
constexpr const char* kQuat =
    R"({"field":"quaternion","dim":1,"coeffs":[[[[1,0,0,0]]],[[[0,0,0.5,0]]]],"r":0.5,"r0":0.8,"N_list":[32,64]})";

std::string with(const std::string& base, const std::string& extra) {
  return base.substr(0, base.size() - 1) + "," + extra + "}";
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseConfig, ConstantFunctionAndDefaults) {
  const auto cfg = parse_config(kOne);
  EXPECT_EQ(cfg.field, Field::complex);
  EXPECT_EQ(cfg.dim, 1u);
  ASSERT_EQ(cfg.coeffs.size(), 1u);
  EXPECT_EQ(cfg.coeffs[0](0, 0), Quaternion{1.0});
  EXPECT_EQ(cfg.n_list, std::vector<std::size_t>{16});
  EXPECT_EQ(cfg.cutoff, 1e-12);
  EXPECT_EQ(cfg.nmax, 6u);
  EXPECT_FALSE(cfg.coefficient_symmetry.has_value());
  EXPECT_EQ(cfg.seed, 0u);
  for (const auto& p : cfg.grid) EXPECT_LT(abs(p), cfg.r);
}

TEST(ParseConfig, QuaternionEntryEncoding) {
  const auto cfg = parse_config(
      R"({"field":"quaternion","dim":1,"coeffs":[[[[0,0,1,0]]]],"r":0.5,"r0":0.8,"N_list":[8]})");
  EXPECT_EQ(cfg.coeffs[0](0, 0), (Quaternion{0.0, 0.0, 1.0, 0.0}));
}

TEST(ParseConfig, RadiusOrderNamesBothValues) {
  const std::string msg =
      config_error(R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.9,"r0":0.8,"N_list":[16]})");
  EXPECT_NE(msg.find("$.r"), std::string::npos);
  EXPECT_NE(msg.find("0.9"), std::string::npos);
  EXPECT_NE(msg.find("0.8"), std::string::npos);
}

TEST(ParseConfig, ErrorsArePathQualified) {
  const std::string one = kOne;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"{\"field\":", "$: malformed JSON"},
      {"[1, 2]", "$: expected an object"},
      {R"({"field":"real","dim":1,"coeffs":[],"r":0.5,"r0":0.8,"N_list":[1]})", "$.field"},
      {R"({"field":"complex","dim":1,"coeffs":[[[[1,0,0]]]],"r":0.5,"r0":0.8,"N_list":[1]})", "$.coeffs[0][0][0]"},
      {R"({"field":"complex","dim":2,"coeffs":[[[[1,0],[0,0]]]],"r":0.5,"r0":0.8,"N_list":[1]})", "$.coeffs[0]:"},
      {R"({"field":"complex","dim":1,"coeffs":[[[["a",0]]]],"r":0.5,"r0":0.8,"N_list":[1]})", "$.coeffs[0][0][0][0]"},
      {R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.5,"r0":1.2,"N_list":[1]})", "$.r0"},
      {R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.5,"r0":0.8,"N_list":[]})", "$.N_list"},
      {R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.5,"r0":0.8,"N_list":[16,8]})", "$.N_list[1]"},
      {R"({"field":"complex","dim":1,"coeffs":[[[[1,0]]]],"r":0.5,"r0":0.8})", "$.N_list: missing"},
      {with(one, R"("coefficient_symmetry":[1,-1])"), "$.coefficient_symmetry"},
      {with(one, R"("coefficient_symmetry":[2])"), "$.coefficient_symmetry[0]"},
      {with(one, R"("cutoff":1.5)"), "$.cutoff"},
      {with(one, R"("nmax":-1)"), "$.nmax"},
      {with(one, R"("grid":[[0.6,0]])"), "$.grid[0]"},
      {with(one, R"("tolerances":{"moment":0})"), "$.tolerances.moment"},
      {with(one, R"("tolerances":{"speed":1})"), "$.tolerances.speed"},
      {with(one, R"("epsilon":1e-10)"), "$.epsilon: unknown key"},
  };
  for (const auto& [text, path] : cases) {
    const std::string msg = config_error(text);
    EXPECT_EQ(msg.rfind(path, 0), 0u) << text << " -> " << msg;
  }
}

TEST(ParseConfig, OptionalFields) {
  const auto cfg = parse_config(
      R"({"field":"complex","dim":2,"coeffs":[[[[1,0],[0,0]],[[0,0],[1,0]]]],"r":0.5,"r0":0.8,"N_list":[8,16],
          "cutoff":1e-10,"coefficient_symmetry":[1,-1],"nmax":4,"seed":7,"grid":[[0.1,0.2]],
          "tolerances":{"kernel":1e-9},"output":"x.json"})");
  EXPECT_EQ(cfg.cutoff, 1e-10);
  EXPECT_EQ(*cfg.coefficient_symmetry, (std::vector<int>{1, -1}));
  EXPECT_EQ(cfg.nmax, 4u);
  EXPECT_EQ(cfg.seed, 7u);
  ASSERT_EQ(cfg.grid.size(), 1u);
  EXPECT_EQ(cfg.grid[0], (Quaternion{0.1, 0.2, 0.0, 0.0}));
  EXPECT_EQ(cfg.tol.kernel, 1e-9);
  EXPECT_EQ(cfg.tol.moment, Tolerances{}.moment);
  EXPECT_EQ(*cfg.output, "x.json");
  const Json echo = cfg.echo();
  EXPECT_EQ(echo["seed"], 7);
  EXPECT_EQ(echo["coefficient_symmetry"], Json({1, -1}));
}

TEST(ParseConfig, EchoRoundTrips) {
  const auto cfg = parse_config(with(kQuat, R"("seed":3)"));
  Json echo = cfg.echo();
  const auto again = parse_config(echo.dump());
  EXPECT_EQ(write_json(again.echo()), write_json(echo));
}

TEST(RunPipeline, ConstantFunctionPassesEverywhere) {
  auto cfg = parse_config(kOne);
  cfg.n_list = {16, 32};
  const auto rep = run_pipeline(cfg);
  ASSERT_EQ(rep.records.size(), 2u);
  EXPECT_TRUE(rep.pass());
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.signature.negative, 0u);
    EXPECT_EQ(r.moment_errors.size(), cfg.nmax + 1);
    for (double e : r.moment_errors) EXPECT_LE(e, 1e-12);
    EXPECT_LE(r.coisometry.observable, 1e-12);
    EXPECT_LE(r.kernel_discrepancy, 1e-12);
    EXPECT_TRUE(r.norm.pass);
  }
  EXPECT_EQ(rep.records[0].n, 16u);
  EXPECT_EQ(rep.records[1].n, 32u);
}

TEST(RunPipeline, IndefiniteCaseHasNegativeSquares) {
  const auto rep = run_pipeline(parse_config(kLinear));
  EXPECT_TRUE(rep.pass());
  for (const auto& r : rep.records) EXPECT_GT(r.signature.negative, 0u);
}

TEST(RunPipeline, SkewConstantGivesEmptyModel) {
  const auto rep = run_pipeline(
      parse_config(R"({"field":"complex","dim":1,"coeffs":[[[[0,2]]]],"r":0.5,"r0":0.8,"N_list":[8,12]})"));
  EXPECT_TRUE(rep.pass());
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.signature, (SignatureCount{0, 0, r.n}));
    for (double e : r.moment_errors) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(r.coisometry.observable, 0.0);
    EXPECT_EQ(r.kernel_discrepancy, 0.0);
  }
}

TEST(RunPipeline, QuaternionicAndKreinCoefficientSpace) {
  EXPECT_TRUE(run_pipeline(parse_config(kQuat)).pass());
  const auto rep = run_pipeline(parse_config(
      R"({"field":"complex","dim":2,"coeffs":[[[[1,0],[0.2,0.1]],[[0.1,0],[0.8,0]]],[[[0.3,0],[0,0]],[[0.1,-0.2],[0.2,0]]]],
          "r":0.5,"r0":0.8,"N_list":[24],"coefficient_symmetry":[1,-1]})"));
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.records[0].signature.negative, 0u);
}

TEST(RunPipeline, MomentColumnsSettleMonotonically) {
  // beyond the order where the cutoff starts discarding eigenvalues, each
  // error column is non-increasing in N
  for (const char* text : {kOne, kLinear, kQuat}) {
    auto cfg = parse_config(text);
    cfg.n_list = {32, 48, 64};
    const auto rep = run_pipeline(cfg);
    for (std::size_t i = 1; i < rep.records.size(); ++i)
      for (std::size_t k = 0; k <= cfg.nmax; ++k)
        EXPECT_LE(rep.records[i].moment_errors[k], rep.records[i - 1].moment_errors[k] * (1.0 + 1e-6) + 1e-15)
            << text << " N=" << rep.records[i].n << " e" << k;
  }
}

TEST(ThreadCount, EnvironmentCap) {
  ::setenv("KREIN_REALIZE_THREADS", "2", 1);
  EXPECT_EQ(thread_count(5), 2u);
  EXPECT_EQ(thread_count(1), 1u);
  ::setenv("KREIN_REALIZE_THREADS", "zero", 1);
  EXPECT_THROW(thread_count(3), ConfigError);
  ::unsetenv("KREIN_REALIZE_THREADS");
  EXPECT_GE(thread_count(3), 1u);
}

TEST(EmitReport, DeterministicAcrossThreadCounts) {
  const auto cfg = parse_config(kLinear);
  ::setenv("KREIN_REALIZE_THREADS", "1", 1);
  const std::string serial = emit_report(run_pipeline(cfg), Format::json);
  ::setenv("KREIN_REALIZE_THREADS", "3", 1);
  const std::string parallel = emit_report(run_pipeline(cfg), Format::json);
  ::unsetenv("KREIN_REALIZE_THREADS");
  EXPECT_EQ(serial, parallel);
}

TEST(EmitReport, ReserializationIsByteIdentical) {
  for (const char* text : {kOne, kQuat}) {
    const std::string out = emit_report(run_pipeline(parse_config(text)), Format::json);
    EXPECT_EQ(write_json(Json::parse(out)), out);
    const Json j = Json::parse(out);
    EXPECT_EQ(j.begin().key(), "environment");
    EXPECT_TRUE(j["pass"].get<bool>());
    for (const auto& rec : j["records"]) {
      EXPECT_TRUE(rec["moments"].contains("tolerance"));
      EXPECT_TRUE(rec["coisometry"].contains("tolerance"));
      EXPECT_TRUE(rec["kernel_three_way"].contains("tolerance"));
      EXPECT_TRUE(rec["kernel_reproduction"].contains("tolerance"));
    }
  }
}

TEST(EmitReport, FloatFormatting) {
  Json j;
  j["a"] = 0.1;
  j["b"] = -0.0;
  j["c"] = std::vector<double>{1.0, 2.5e-300};
  j["d"] = Json::object();
  EXPECT_EQ(write_json(j),
            "{\n  \"a\": 0.10000000000000001,\n  \"b\": 0,\n  \"c\": [1, 2.5e-300],\n  \"d\": {}\n}\n");
}

TEST(EmitReport, SingleRecordCsv) {
  const std::string out = emit_report(run_pipeline(parse_config(kOne)), Format::csv);
  std::istringstream in(out);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header.rfind("N,positive,negative,zero,e0,", 0), 0u);
  EXPECT_EQ(row.rfind("16,16,0,0,", 0), 0u);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
  EXPECT_TRUE(row.ends_with(",true"));
}

TEST(PipelineError, NamesTheTruncationOrder) {
  const PipelineError e(32, "eigensolver did not converge");
  EXPECT_STREQ(e.what(), "N = 32: eigensolver did not converge");
  EXPECT_EQ(e.truncation(), 32u);
}

class RunCli : public ::testing::Test {
 protected:
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "krein_cli_test";

  void SetUp() override { std::filesystem::create_directories(dir); }
  void TearDown() override { std::filesystem::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
    args.insert(args.begin(), "realize");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
  }
};

TEST_F(RunCli, ExitCodes) {
  const auto good = write("one.json", kOne);
  std::string out, err;
  EXPECT_EQ(run({"--config", good}, &out), kExitPass);
  EXPECT_EQ(Json::parse(out)["records"].size(), 1u);

  EXPECT_EQ(run({"--config", write("strict.json", with(kOne, R"("tolerances":{"moment":1e-30})"))}), kExitAssertion);
  EXPECT_EQ(run({"--config", write("bad.json", R"({"field":"complex"})")}, nullptr, &err), kExitConfig);
  EXPECT_NE(err.find("$.dim"), std::string::npos);
  EXPECT_EQ(run({"--config", (dir / "missing.json").string()}), kExitConfig);
  EXPECT_EQ(run({"--config", good, "--format", "xml"}), kExitConfig);
  EXPECT_EQ(run({}), kExitConfig);
}

TEST_F(RunCli, CsvToFile) {
  const auto good = write("one.json", kOne);
  const auto target = (dir / "report.csv").string();
  std::string out;
  EXPECT_EQ(run({"--config", good, "--format", "csv", "--out", target}, &out), kExitPass);
  EXPECT_TRUE(out.empty());
  std::ifstream in(target);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), emit_report(run_pipeline(parse_config(kOne)), Format::csv));
}

TEST_F(RunCli, OutputPathFromConfig) {
  const auto target = (dir / "from_config.json").string();
  const auto cfg = write("cfg.json", with(kOne, "\"output\":" + Json(target).dump()));
  EXPECT_EQ(run({"--config", cfg}), kExitPass);
  EXPECT_TRUE(std::filesystem::exists(target));
  EXPECT_EQ(run({"--config", cfg, "--out", (dir / "nodir" / "x.json").string()}), kExitConfig);
}

}  // namespace
}  // namespace krein::cli
