#include "klsum/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace klsum::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) v.push_back(line);
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("klsum_cli_test_" + name);
}

TEST(Sweep, SmallPrimeField) {
  const auto r = invoke({"sweep", "--p", "5", "--r", "1", "--n", "1"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "a,c0,c1,c2,c3");
  EXPECT_EQ(rows[1], "zero,-1,0,0,0");
  EXPECT_EQ(rows[2], "0,2,0,1,1");  // gamma = 2 here
  EXPECT_NE(r.err.find("wrote 5 values"), std::string::npos);
}

TEST(Sweep, ByteIdenticalAcrossRunsAndThreads) {
  const auto a = invoke({"sweep", "--p", "5", "--r", "4", "--n", "1"});
  const auto b = invoke({"sweep", "--p", "5", "--r", "4", "--n", "1", "--threads", "3"});
  ASSERT_EQ(a.code, kPass);
  EXPECT_EQ(lines(a.out).size(), 626u);
  EXPECT_EQ(a.out, b.out);
}

TEST(Sweep, EmbedAndJson) {
  auto r = invoke({"sweep", "--p", "5", "--embed-precision", "6"});
  ASSERT_EQ(r.code, kPass);
  EXPECT_EQ(lines(r.out)[0], "a,c0,c1,c2,c3,re,im");
  EXPECT_NE(lines(r.out)[2].find("0.381966"), std::string::npos);
  r = invoke({"sweep", "--p", "5", "--r", "2", "--format", "json"});
  ASSERT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["field"]["p"], 5);
  EXPECT_EQ(j["values"].size(), 25u);
  EXPECT_EQ(j["values"][0]["a"], "zero");
}

TEST(Usage, Errors) {
  EXPECT_EQ(invoke({"sweep", "--p", "4"}).code, kUsageError);
  EXPECT_NE(invoke({"sweep", "--p", "4"}).err.find("p must be prime"), std::string::npos);
  EXPECT_EQ(invoke({"sweep"}).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--p", "5", "--format", "xml"}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--p", "5", "--r", "3", "--cap-field", "100"}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--p", "5", "--n", "0"}).code, kUsageError);
}

TEST(Classify, SmallField) {
  const auto r = invoke({"classify", "--p", "5", "--r", "2", "--n", "1"});
  ASSERT_EQ(r.code, kPass);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 25u);
  EXPECT_EQ(rows[0], "a_dlog,predicted_de,e,t,u,mode,actual_de,pass");
  int e2 = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].find(",4,2,1,1,iff,") != std::string::npos) ++e2;
  }
  EXPECT_EQ(e2, 4);
  EXPECT_EQ(rows[4], "3,4,2,1,1,iff,,");
  EXPECT_NE(r.err.find("rational points: 4 (complete)"), std::string::npos);
}

TEST(Classify, NoRationalValues) {
  const auto r = invoke({"classify", "--p", "5", "--r", "3", "--n", "1"});
  ASSERT_EQ(r.code, kPass);
  EXPECT_NE(r.err.find("no rational values possible: (p-1)/d does not divide r"), std::string::npos);
  EXPECT_NE(r.err.find("mode: if-only"), std::string::npos);
}

TEST(Classify, TrivialWhenDEqualsPMinusOne) {
  const auto r = invoke({"classify", "--p", "3", "--r", "7", "--n", "1"});
  ASSERT_EQ(r.code, kPass);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2187u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",2,1,,,"), std::string::npos) << rows[i];
}

TEST(Classify, JsonAndListAllE) {
  const auto r = invoke({"classify", "--p", "7", "--r", "6", "--n", "1", "--format", "json", "--list-all-e",
                         "--cap-terms", "1"});
  ASSERT_EQ(r.code, kPass);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["d"], 2);
  EXPECT_EQ(j["R"], 3);
  EXPECT_EQ(j["rows"].size(), 117648u);
  EXPECT_TRUE(j["rows"][0].contains("applicable_e"));
}

TEST(Verify, PassingFields) {
  for (auto args : std::vector<std::vector<std::string>>{{"verify", "--p", "7", "--r", "3", "--n", "1"},
                                                         {"verify", "--p", "5", "--r", "1", "--n", "2"},
                                                         {"verify", "--p", "5", "--r", "3", "--n", "1"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, kPass) << r.out;
    EXPECT_NE(r.out.find("verification passed"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  }
  const auto r = invoke({"verify", "--p", "7", "--r", "3", "--n", "1"});
  EXPECT_NE(r.out.find("PASS predicted field = generated field (iff): 342/342"), std::string::npos);
  EXPECT_NE(r.out.find("PASS rational points match: 12/12"), std::string::npos);
}

// The table is read back from disk and re-verified.
TEST(Verify, TableRoundTrip) {
  const auto table = temp_path("table.csv");
  const auto rows = temp_path("rows.csv");
  ASSERT_EQ(invoke({"sweep", "--p", "7", "--r", "2", "--out", table.string()}).code, kPass);
  const auto r = invoke({"verify", "--p", "7", "--r", "2", "--table", table.string(), "--out", rows.string()});
  EXPECT_EQ(r.code, kPass) << r.out;
  std::ifstream in(rows);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "a_dlog,predicted_de,e,t,u,mode,actual_de,pass");
  std::filesystem::remove(table);
  std::filesystem::remove(rows);
}

TEST(Verify, CorruptTableFails) {
  const auto table = temp_path("bad.csv");
  ASSERT_EQ(invoke({"sweep", "--p", "5", "--r", "2", "--out", table.string()}).code, kPass);
  std::ifstream in(table);
  std::stringstream buf;
  buf << in.rdbuf();
  in.close();
  auto text = buf.str();
  const auto start = text.find("\n3,");
  ASSERT_NE(start, std::string::npos);
  const auto c0_begin = start + 3;
  const auto c0_end = text.find(',', c0_begin);
  const auto c0 = std::stoll(text.substr(c0_begin, c0_end - c0_begin));
  text.replace(c0_begin, c0_end - c0_begin, std::to_string(c0 + 1));
  std::ofstream(table) << text;
  const auto r = invoke({"verify", "--p", "5", "--r", "2", "--table", table.string()});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.out.find("verification FAILED"), std::string::npos);
  std::filesystem::remove(table);
}

TEST(Bounds, Output) {
  const auto r = invoke({"bounds", "--p", "5", "--r", "2", "--n", "1"});
  ASSERT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("fischer_threshold = 1089"), std::string::npos);
  EXPECT_NE(r.out.find("fischer_bound_met = false"), std::string::npos);
  EXPECT_NE(r.out.find("guaranteed = true"), std::string::npos);
}

TEST(Distinctness, ExitCodes) {
  EXPECT_EQ(invoke({"distinctness", "--p", "7", "--r", "3"}).code, kPass);
  const auto r = invoke({"distinctness", "--p", "3", "--r", "2"});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.out.find("holds = false"), std::string::npos);
}

#ifdef KLSUM_CLI_PATH
TEST(Binary, ExitCodesThroughProcess) {
  const std::string bin = KLSUM_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("verify --p 7 --r 3 --n 1"), 0);
  EXPECT_EQ(status("sweep --p 4"), 2);
  EXPECT_EQ(status("distinctness --p 3 --r 2"), 1);
}
#endif

}  // namespace
}  // namespace klsum::cli
