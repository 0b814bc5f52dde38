// Drives the ghtool binary end to end: exit codes, outputs, round-trips.

#include <array>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "ghkit/io.hpp"
#include "ghkit/model_spaces.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run ghtool(const std::string& args) {
  const std::string cmd = std::string(GHTOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("ghtool_test_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("help lists the subcommands") {
  const auto r = ghtool("--help");
  CHECK(r.status == 0);
  for (const char* sub : {"make-space", "distortion", "bounds", "exact", "cx", "certify", "sweep", "verify-all"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
  CHECK(ghtool("sweep --help").out.find("--steps") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
  CHECK(ghtool("").status == 1);
  CHECK(ghtool("no-such-command").status == 1);
  CHECK(ghtool("exact --x /nonexistent.json --y /nonexistent.json").status == 1);
  CHECK(ghtool("certify --lambda -1").status == 1);
  TempDir dir;
  ghkit::io::write_file(dir / "bad.json", R"({"dist": [[0,1,3],[1,0,1],[3,1,0]]})");
  CHECK(ghtool("exact --x " + (dir / "bad.json") + " --y " + (dir / "bad.json")).status == 1);
}

TEST_CASE("make-space, exact, bounds, cx, distortion") {
  TempDir dir;
  CHECK(ghtool("make-space --kind circle --points 4 --out " + (dir / "c4.json")).status == 0);
  CHECK(ghtool("make-space --kind segment --lambda 2 --points 3 --out " + (dir / "s.json")).status == 0);
  CHECK(ghtool("make-space --kind segment --lambda 2 --points 3 --format csv --out " + (dir / "s.csv")).status == 0);

  const auto same = ghtool("exact --x " + (dir / "c4.json") + " --y " + (dir / "c4.json"));
  CHECK(same.status == 0);
  CHECK(same.out.find(R"("value":0)") != std::string::npos);
  CHECK(same.out.find(R"("status":"optimal")") != std::string::npos);

  const auto csv = ghtool("exact --x " + (dir / "s.csv") + " --y " + (dir / "s.json"));
  CHECK(csv.out.find(R"("value":0)") != std::string::npos);

  const auto b = ghtool("bounds --x " + (dir / "c4.json") + " --y " + (dir / "s.json"));
  CHECK(b.status == 0);
  CHECK(count_lines(b.out) >= 4);
  CHECK(b.out.find("\"source\":\"involution\"") != std::string::npos);

  const auto w = ghtool("cx --exact --x " + (dir / "s.json") + " --out " + (dir / "w.json"));
  CHECK(w.status == 0);
  const auto witness = ghkit::io::witness_from_json(ghkit::io::read_file(dir / "w.json"));
  CHECK(witness.objective <= 1e-9);
  CHECK(ghtool("bounds --x " + (dir / "c4.json") + " --y " + (dir / "s.json") + " --c-witness " + (dir / "w.json"))
            .status == 0);
  // A witness claiming too little is a verification failure.
  ghkit::io::write_file(dir / "stale.json", R"({"values": [0, 0, 0], "objective": 0})");
  CHECK(ghtool("bounds --x " + (dir / "c4.json") + " --y " + (dir / "s.json") + " --c-witness " +
               (dir / "stale.json"))
            .status == 2);

  ghkit::io::write_file(dir / "r.json", R"({"pairs": [[0,0],[1,1],[2,2],[2,3]]})");
  const auto d = ghtool("distortion --x " + (dir / "s.json") + " --y " + (dir / "c4.json") + " --pairs " + (dir / "r.json"));
  CHECK(d.status == 0);
  CHECK(d.out.find("\"distortion\"") != std::string::npos);
}

TEST_CASE("make-space whisker and graph") {
  TempDir dir;
  CHECK(ghtool("make-space --kind whisker --lambda 7 --n-circle 24 --graph-out " + (dir / "g.json") + " --out " +
               (dir / "w.json"))
            .status == 0);
  CHECK(ghtool("make-space --kind graph --graph " + (dir / "g.json") + " --out " + (dir / "w2.json")).status == 0);
  // Labels differ between the two routes; the metric agrees up to the
  // 12-digit rounding of serialized edge weights.
  const auto a = ghkit::io::load_space(dir / "w.json");
  const auto b = ghkit::io::load_space(dir / "w2.json");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-10));
  }
}

TEST_CASE("certify writes a certificate that replays") {
  TempDir dir;
  const auto r = ghtool("certify --lambda 3.1416 --out " + (dir / "cert.json"));
  CHECK(r.status == 0);
  const auto c = ghkit::io::certificate_from_json(ghkit::io::read_file(dir / "cert.json"));
  CHECK(std::abs(c.measured / 2 - ghkit::kPi / 3) <= c.slack);
  const auto check = ghtool("certify --check " + (dir / "cert.json"));
  CHECK(check.status == 0);
  CHECK(check.out.find("\"ok\":true") != std::string::npos);

  // Deterministic output.
  CHECK(ghtool("certify --lambda 5.8 --n-circle 120 --m-grid 120 --pl-step 0.02").out ==
        ghtool("--threads 1 certify --lambda 5.8 --n-circle 120 --m-grid 120 --pl-step 0.02").out);
}

TEST_CASE("sweep emits one CSV row per lambda") {
  const auto r = ghtool("sweep --from 0 --to 9.42 --steps 50 --n-circle 180 --m-grid 180 --pl-step 0.0174532925199");
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 51);
  CHECK(r.out.rfind("lambda,formula,lower,upper,regime,slack\n", 0) == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double lambda, formula, lower, upper, slack;
    char regime[8];
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%7[^,],%lf", &lambda, &formula, &lower, &upper, regime,
                        &slack) == 6);
    CHECK(lower - slack <= formula);
    CHECK(formula <= upper + slack);
  }
}

TEST_CASE("verify-all runs selected criteria") {
  const auto r = ghtool("verify-all --only 5 --only 6");
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.find("PASS  5") != std::string::npos);
}
