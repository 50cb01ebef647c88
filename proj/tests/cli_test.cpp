#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

  struct Run {
    int         code = -1;
    std::string out;
  };

  // Runs hx with the given arguments; stderr is discarded.
  Run hx(std::string const& args) {
    std::string cmd = std::string(HX_BINARY) + " " + args + " 2>/dev/null";
    Run         r;
    FILE*       pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
      return r;
    }
    std::array<char, 4096> buf{};
    std::size_t            n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      r.out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::filesystem::path scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "hx_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
  }

}  // namespace

TEST(Cli, GroupReport) {
  auto r = hx("group --type A3 --quiet");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["order"], 24);
  EXPECT_EQ(j["classes"].size(), 5u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(hx("group --type Q7").code, 1);
  EXPECT_EQ(hx("kl basis --type A2 --weights 1,2 --element 0").code, 1);
  EXPECT_EQ(hx("group").code, 1);
  EXPECT_EQ(hx("--no-such-flag group --type A2").code, 1);
  EXPECT_EQ(hx("positivity --type ~A1 --quiet").code, 2);
  EXPECT_EQ(hx("positivity --type B2 --weights 1,2 --quiet").code, 2);
  EXPECT_EQ(hx("kl afunction --type ~A2 --quiet").code, 2);
  EXPECT_EQ(hx("hecke fprobe --type ~A1 --quiet").code, 2);
  EXPECT_EQ(hx("hecke fprobe --type ~A1 --radius 4 --quiet").code, 0);
}

TEST(Cli, KLBasisAndHConst) {
  auto r = hx("kl basis --type A2 --element 0,1,0 --quiet");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["elements"].size(), 1u);
  EXPECT_EQ(j["elements"][0]["terms"].size(), 6u);

  auto h = hx("kl hconst --type A1 --element 0 --element 0 --quiet");
  ASSERT_EQ(h.code, 0);
  auto hj = nlohmann::json::parse(h.out);
  ASSERT_EQ(hj["terms"].size(), 1u);
  EXPECT_EQ(hj["terms"][0][1].dump(), "[[-1,1],[1,1]]");
}

TEST(Cli, PositivityCsvAndJson) {
  auto csv = hx("positivity --type A2 --csv --quiet");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("class,size,min_length,positive,n_at_1\n", 0), 0u);
  auto json = hx("positivity --type A2 --quiet");
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 3u);
}

TEST(Cli, OutputIndependentOfJobs) {
  for (std::string args : {"positivity --type B3", "kl afunction --type B3",
                           "jring table --type A3", "hecke fprobe --type ~G2 --weights 1,1,3 --radius 4"}) {
    auto one  = hx(args + " --jobs 1 --quiet");
    auto four = hx(args + " --jobs 4 --quiet");
    ASSERT_EQ(one.code, 0) << args;
    EXPECT_EQ(one.out, four.out) << args;
  }
}

TEST(Cli, ConfigFileAndOut) {
  auto cfg = scratch("config.json");
  auto out = scratch("out.json");
  {
    std::ofstream f(cfg);
    f << R"({"type": "B2", "weights": [1, 2], "out": ")" << out.string() << R"("})";
  }
  auto r = hx("kl afunction --quiet --config " + cfg.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  auto          j = nlohmann::json::parse(in);
  EXPECT_EQ(j["type"], "B2");
  EXPECT_EQ(j["weights"], (nlohmann::json{1, 2}));
  // Command-line flags win over the file.
  auto r2 = hx("kl afunction --quiet --type A2 --weights equal --out - --config "
               + cfg.string());
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(hx("group --config /nonexistent/hx.json").code, 1);

  // Equal parameters may be spelled L=1^rank.
  {
    std::ofstream f(cfg);
    f << R"({"type": "A2", "weights": "L=1^rank"})";
  }
  auto eq = hx("kl afunction --quiet --config " + cfg.string());
  ASSERT_EQ(eq.code, 0);
  EXPECT_EQ(nlohmann::json::parse(eq.out)["weights"], (nlohmann::json{1, 1}));
  EXPECT_EQ(hx("positivity --quiet --type A2 --weights L=1^2").code, 0);
  EXPECT_EQ(hx("positivity --quiet --type A2 --time-budget 0").code, 0);
}

TEST(Cli, MatrixInput) {
  auto m = scratch("matrix.json");
  {
    std::ofstream f(m);
    f << "[[1,3,2],[3,1,4],[2,4,1]]";
  }
  auto r = hx("group --quiet --matrix " + m.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["order"], 48);
  {
    std::ofstream f(m);
    f << "[[1,5],[5,1]]";
  }
  EXPECT_EQ(hx("group --quiet --matrix " + m.string()).code, 1);
}
