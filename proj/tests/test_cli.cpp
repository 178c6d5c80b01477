#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "finosc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = finosc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST(Cli, VerifyPasses) {
  const Result r = invoke({"verify", "--d", "21"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto ls = lines(r.out);
  EXPECT_GE(ls.size(), 40u);
  EXPECT_NE(ls.back().find("invariants passed"), std::string::npos);
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) EXPECT_EQ(ls[i].rfind("PASS", 0), 0u) << ls[i];
}

TEST(Cli, VerifySmallestDimension) { EXPECT_EQ(invoke({"verify", "--d", "5"}).code, 0); }

TEST(Cli, RejectsEvenDimension) {
  const Result r = invoke({"verify", "--d", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("odd"), std::string::npos);
  EXPECT_EQ(invoke({"spectrum", "--d", "3"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--method", "other"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"table1", "--d", "17"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, Table1) {
  const Result r = invoke({"table1"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 17u);
  EXPECT_EQ(ls[0], "alpha_idx,beta_idx,deviation");
  const auto f = fields(ls[1]);
  EXPECT_EQ(f[0], "1");
  EXPECT_EQ(f[1], "1");
  EXPECT_NEAR(std::stod(f[2]), 2.44895e-10, 1e-14);
  EXPECT_TRUE(r.err.empty());
  EXPECT_NE(invoke({"table1", "--d", "23"}).err.find("warning"), std::string::npos);
}

TEST(Cli, Spectrum) {
  for (const char* method : {"frame", "harper"}) {
    const Result r = invoke({"spectrum", "--method", method});
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 22u);
    EXPECT_EQ(ls[0], "m,eigenvalue,parity,alternations,fourier_index");
    double prev = -1e300;
    for (int m = 0; m < 21; ++m) {
      const auto f = fields(ls[m + 1]);
      EXPECT_EQ(f[0], std::to_string(m));
      EXPECT_EQ(f[2], m % 2 ? "odd" : "even");
      EXPECT_EQ(f[3], std::to_string(m));
      if (m < 10) EXPECT_GT(std::stod(f[1]), prev);
      prev = std::stod(f[1]);
    }
  }
}

TEST(Cli, Compare) {
  const Result r = invoke({"compare"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 22u);
  EXPECT_EQ(ls[0], "m,delta_f,delta_h,delta_m,delta_r");
  EXPECT_LT(std::stod(fields(ls[1])[1]), 1e-6);
  const Result n = invoke({"compare", "--normalize-ladder"});
  EXPECT_EQ(n.code, 0);
  EXPECT_NE(n.out, r.out);
}

TEST(Cli, FrftBothWithOracle) {
  const Result r = invoke({"frft", "--method", "both", "--oracle", "--signal", "gauss:10", "--alpha", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 22u);
  EXPECT_EQ(ls[0], "n,in_re,frame_re,frame_im,harper_re,harper_im,oracle_re,oracle_im");
  EXPECT_NE(r.err.find("max |frame - oracle|"), std::string::npos);
  EXPECT_NE(r.err.find("max |harper - oracle|"), std::string::npos);
}

TEST(Cli, FrftGaussianAtOne) {
  const Result r = invoke({"frft", "--signal", "gauss:10", "--alpha", "1"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "n,in_re,out_re,out_im");
  const finosc::Lattice lat(21);
  const finosc::ThetaGaussian wide = finosc::theta_gaussian(lat, 0.1);
  for (int n = -10; n <= 10; ++n) {
    const auto f = fields(ls[n + 11]);
    EXPECT_NEAR(std::stod(f[2]), wide[n] / std::sqrt(10.0), 1e-10);
    EXPECT_NEAR(std::stod(f[3]), 0.0, 1e-10);
  }
}

TEST(Cli, FrftRectAtZeroIsIdentity) {
  const Result r = invoke({"frft", "--signal", "rect", "--alpha", "0", "--method", "harper"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    EXPECT_NEAR(std::stod(f[2]), std::stod(f[1]), 1e-12);
  }
}

TEST(Cli, FrftRejectsUnknownSignal) {
  EXPECT_EQ(invoke({"frft", "--signal", "triangle"}).code, 2);
  EXPECT_EQ(invoke({"frft", "--signal", "gauss:-1"}).code, 2);
  EXPECT_EQ(invoke({"frft", "--signal", "gauss:abc"}).code, 2);
}

TEST(Cli, DeterministicAndRoundTrips) {
  const Result a = invoke({"spectrum", "--d", "11"});
  const Result b = invoke({"spectrum", "--d", "11"});
  EXPECT_EQ(a.out, b.out);
  const finosc::SpectralBasis basis = finosc::frame_basis(finosc::Lattice(11));
  const auto ls = lines(a.out);
  for (int m = 0; m < 11; ++m) EXPECT_EQ(std::stod(fields(ls[m + 1])[1]), basis.value(m));
}

TEST(Cli, WritesFileAtomically) {
  const auto dir = std::filesystem::temp_directory_path() / "finosc_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "spectrum.csv").string();
  const Result r = invoke({"spectrum", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), invoke({"spectrum"}).out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, SvgOutput) {
  const Result r = invoke({"compare", "--format", "svg"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  EXPECT_NE(r.out.find("polyline"), std::string::npos);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
}
