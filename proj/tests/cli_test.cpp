#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kWorked =
    "[params]\n"
    "n = 2\n"
    "a = 1, 1\n"
    "b = 1, 1\n"
    "c = 4, 4\n"
    "theorem = T1-necessary\n"
    "[spaces]\n"
    "p = 2, 2\n"
    "q = 2, 2\n"
    "alpha = 0, 0\n"
    "beta = 0, 0\n";

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "frcone-cli-test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path path = scratch() / name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Exit status of `frcone <args>`, with stdout and stderr captured next to the configs.
int frcone(const std::string& args) {
  const std::string cmd = std::string(FRCONE_CLI) + " " + args + " > " + (scratch() / "out.txt").string() + " 2> " +
                          (scratch() / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli exit codes") {
  const auto ok = write_config("ok.ini", kWorked);
  CHECK(frcone("check -c " + ok.string() + " --no-write") == 0);
  CHECK(slurp(scratch() / "out.txt") == "check T1-necessary: holds (6/6 clauses)\n");

  CHECK(frcone("check -c " + ok.string() + " --no-write -s params.c=9/2,4") == 1);
  CHECK(frcone("check -c " + ok.string() + " --no-write -s spaces.q=1,1") == 2);

  std::string decimal = kWorked;
  decimal.replace(decimal.find("a = 1, 1"), 8, "a = 1.5, 1");
  const auto bad = write_config("bad.ini", decimal);
  CHECK(frcone("check -c " + bad.string() + " --no-write") == 3);

  const auto broken = write_config("broken.ini", "[params]\nn = 2\n[bogus]\n");
  CHECK(frcone("check -c " + broken.string()) == 3);
  CHECK(slurp(scratch() / "err.txt").find(broken.string() + ":3:1:") == 0);

  CHECK(frcone("check -c " + ok.string() + " --no-write -s nodot") == 3);
  CHECK(frcone("verify nonsense -c " + ok.string()) == 3);
  CHECK(frcone("check") == 3);
  CHECK(frcone("witness -c " + ok.string() + " --no-write") == 0);
}

TEST_CASE("cli writes reports to the requested directory") {
  const auto ok = write_config("ok.ini", kWorked);
  const fs::path out = scratch() / "reports";
  fs::remove_all(out);
  CHECK(frcone("witness -c " + ok.string() + " -o " + out.string()) == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    CHECK(entry.path().extension() == ".json");
    CHECK(entry.path().filename().string().rfind("witness-", 0) == 0);
    ++files;
  }
  CHECK(files == 1);

  const fs::path env = scratch() / "env-reports";
  fs::remove_all(env);
  ::setenv("FRCONE_OUTPUT_DIR", env.c_str(), 1);
  CHECK(frcone("check -c " + ok.string()) == 0);
  ::unsetenv("FRCONE_OUTPUT_DIR");
  CHECK(fs::exists(env));
  CHECK(!fs::is_empty(env));
}
