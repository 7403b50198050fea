#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qnn_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + QNN_CLI + "\" " + args + " > \"" +
                            (dir_ / "stdout.txt").string() + "\" 2> \"" +
                            (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write(const fs::path& p, const std::string& text) const {
    std::ofstream out(p, std::ios::binary);
    out << text;
  }

  std::string out(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, VerifyConvergenceDirectFlags) {
  EXPECT_EQ(run("verify-convergence --n 3 --eta 0.1 --seed 7 --output_path " + out("v")), 0)
      << read(dir_ / "stderr.txt");
  const auto report = read(dir_ / "v" / "report.csv");
  EXPECT_EQ(report.rfind("step,error_sq,measured_ratio,predicted_ratio,deviation,status\n", 0), 0u);
  EXPECT_EQ(report.find("violation"), std::string::npos);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
  write(dir_ / "run.cfg", "n_inputs = 2\neta = 0.05\nmax_steps = 3\noutput_path = " + out("a") +
                              "\n");
  // Config alone: 3 steps at a slow rate do not converge.
  EXPECT_EQ(run("train-quantum --config " + out("run.cfg")), 2);
  EXPECT_NE(read(dir_ / "stderr.txt").find("not converged"), std::string::npos);
  // eta = 1/n converges in one step.
  EXPECT_EQ(run("train-quantum --config " + out("run.cfg") + " --eta 0.5 --output_path " + out("b")),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "b" / "curve.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "b" / "weights.json"));
  EXPECT_EQ(read(dir_ / "b" / "curve.csv").rfind("step,error_sq,measured_ratio,predicted_ratio\n", 0),
            0u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("train-quantum --config " + out("missing.cfg")), 4);
  EXPECT_EQ(run("train-quantum --n_inputs 2 --eta -1 --output_path " + out("x")), 3);
  EXPECT_EQ(run("train-quantum --n_inputs 2 --eta abc --output_path " + out("x")), 3);
  EXPECT_EQ(run("train-quantum --bogus 1"), 3);
  EXPECT_EQ(run("fly"), 3);
  EXPECT_EQ(run(""), 3);
  EXPECT_EQ(run("--help"), 0);
  write(dir_ / "bad.cfg", "eta = 0.1\nwhat\n");
  EXPECT_EQ(run("decompose --config " + out("bad.cfg")), 3);
  EXPECT_NE(read(dir_ / "stderr.txt").find("line 2"), std::string::npos);
}

TEST_F(Cli, TrainClassicalAndDecompose) {
  write(dir_ / "and.json", R"({"patterns": [{"x": [0,0,1], "d": 0}, {"x": [0,1,1], "d": 0},
                                            {"x": [1,0,1], "d": 0}, {"x": [1,1,1], "d": 1}]})");
  EXPECT_EQ(run("train-classical --pattern_path " + out("and.json") +
                " --eta 0.3 --max_steps 100 --output_path " + out("c")),
            0)
      << read(dir_ / "stderr.txt");
  EXPECT_NE(read(dir_ / "c" / "weights.json").find("\"activation\": \"step\""), std::string::npos);

  EXPECT_EQ(run("decompose --n_inputs 3 --eta 0.2 --seed 5 --output_path " + out("d")), 0)
      << read(dir_ / "stderr.txt");
  EXPECT_TRUE(fs::exists(dir_ / "d" / "circuits.csv"));
}

}  // namespace
