// End-to-end checks of the installed command-line binary: exit codes, output
// formats, and byte-identical replay. Skipped when the binary is not built.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "propertime/serialize.hpp"

#ifndef PROPERTIME_CLI_PATH
#define PROPERTIME_CLI_PATH ""
#endif

namespace fs = std::filesystem;
using propertime::io::read_text_file;
using propertime::io::write_text_file;

namespace {

const std::string kCli = PROPERTIME_CLI_PATH;

struct RunOutcome {
  int exit_code;
  std::string out;  // stdout + stderr
};

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("propertime-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string file(const char* name) const { return (dir / name).string(); }
};

RunOutcome run_cli(const Workspace& ws, const std::string& args,
                   const std::string& env = "") {
  const std::string capture = ws.file("capture.txt");
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += "\"" + kCli + "\" " + args + " > \"" + capture + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  RunOutcome r;
  r.exit_code = (raw < 0) ? raw : WEXITSTATUS(raw);
  r.out = fs::exists(capture) ? read_text_file(capture) : "";
  std::remove(capture.c_str());
  return r;
}

}  // namespace

TEST_CASE("command-line surface") {
  if (kCli.empty()) {
    MESSAGE("cli binary not built; skipping");
    return;
  }
  Workspace ws;

  SUBCASE("usage and parse errors") {
    CHECK(run_cli(ws, "--help").exit_code == 0);
    CHECK(run_cli(ws, "--version").exit_code == 0);
    CHECK(run_cli(ws, "").exit_code == 2);
    CHECK(run_cli(ws, "frobnicate").exit_code == 2);
    CHECK(run_cli(ws, "shift sods --no-such-flag").exit_code == 2);
    CHECK(run_cli(ws, "shift sods").exit_code == 2);  // no parameter source
    CHECK(run_cli(ws, "shift sods --preset al+ --eps-c 1e-3").exit_code == 2);
    CHECK(run_cli(ws, "shift blips --preset al+").exit_code == 2);
  }

  SUBCASE("shift tables carry the catalog numbers") {
    const auto vs = run_cli(ws, "shift vsods --preset al+");
    CHECK(vs.exit_code == 0);
    CHECK(vs.out.find("fractional_shift") != std::string::npos);
    CHECK(vs.out.find("-8.2276") != std::string::npos);

    const auto sq =
        run_cli(ws, "shift sqsods --preset al+ --r 2.26 --out \"" +
                        ws.file("sq.csv") + "\"");
    CHECK(sq.exit_code == 0);
    CHECK(sq.out.find("-3.7784") != std::string::npos);
    const auto csv = read_text_file(ws.file("sq.csv"));
    CHECK(csv.rfind("kind,", 0) == 0);
    CHECK(csv.find("sqsods") != std::string::npos);

    const auto th = run_cli(ws, "shift sods --preset al+ --nbar 2");
    CHECK(th.exit_code == 0);

    const auto q = run_cli(ws, "shift qsods --eps-c 1e-3 --beta 2");
    CHECK(q.exit_code == 0);
    CHECK(q.out.find("0.2030") != std::string::npos);
    CHECK(q.out.find("-0.000117851") != std::string::npos);
    CHECK(q.out.find("time-averaged") != std::string::npos);

    CHECK(run_cli(ws, "shift sqsods --preset al+ --r -1").exit_code == 2);
  }

  SUBCASE("ramsey run produces consistent files and replays byte-identically") {
    write_text_file(ws.file("ramsey.cfg"),
                    "eps_c = 1e-2\n"
                    "omega_ratio = 50\n"
                    "prep = squeezed:0.8\n"
                    "grid = lin:0:20:9\n"
                    "dim = 64\n");
    const std::string base = ws.file("run");
    const auto r = run_cli(ws, "ramsey --config \"" + ws.file("ramsey.cfg") +
                                   "\" --out \"" + base + "\"");
    CHECK(r.exit_code == 0);
    const auto csv1 = read_text_file(base + ".csv");
    CHECK(csv1.rfind("omega_t,", 0) == 0);
    const auto json = nlohmann::json::parse(read_text_file(base + ".json"));
    CHECK(json.at("points").get<int>() == 9);
    CHECK(json.at("dim").get<int>() == 64);

    const auto r2 = run_cli(ws, "ramsey --config \"" + ws.file("ramsey.cfg") +
                                    "\" --out \"" + base + "\"");
    CHECK(r2.exit_code == 0);
    CHECK(read_text_file(base + ".csv") == csv1);

    write_text_file(ws.file("bad.cfg"), "eps_c = 1e-2\ngrid = 0,1\nfoo = 1\n");
    CHECK(run_cli(ws, "ramsey --config \"" + ws.file("bad.cfg") +
                          "\" --out \"" + base + "\"")
              .exit_code == 2);
    CHECK(run_cli(ws, "ramsey --config \"" + ws.file("absent.cfg") +
                          "\" --out \"" + base + "\"")
              .exit_code == 2);
  }

  SUBCASE("projected protocol run") {
    write_text_file(ws.file("q.cfg"),
                    "eps_c = 1e-3\n"
                    "beta = 1.0\n"
                    "dim = 64\n"
                    "periods = 1\n"
                    "samples_per_period = 64\n");
    const std::string base = ws.file("qrun");
    const auto r = run_cli(ws, "qsods-protocol --config \"" + ws.file("q.cfg") +
                                   "\" --out \"" + base + "\"");
    CHECK(r.exit_code == 0);
    const auto json = nlohmann::json::parse(read_text_file(base + ".json"));
    CHECK(json.at("mean_success").get<double>() > 0.4);
    CHECK(json.at("time_averaged_phase").is_number());
  }

  SUBCASE("sweep replays byte-identically") {
    write_text_file(ws.file("sweep.cfg"),
                    "quantities = thermal_visibility, qsods_offset\n"
                    "eps_c = lin:0.001:0.5:5\n"
                    "beta = 0.5,2\n"
                    "omega_t = 1,2\n"
                    "nbar = 1\n");
    const std::string out = ws.file("sweep.csv");
    const auto r1 = run_cli(ws, "sweep --config \"" + ws.file("sweep.cfg") +
                                    "\" --out \"" + out + "\"");
    CHECK(r1.exit_code == 0);
    const auto first = read_text_file(out);
    CHECK(first.rfind("eps_c,", 0) == 0);
    const auto r2 = run_cli(ws, "sweep --config \"" + ws.file("sweep.cfg") +
                                    "\" --out \"" + out + "\"");
    CHECK(r2.exit_code == 0);
    CHECK(read_text_file(out) == first);
  }

  SUBCASE("resource exhaustion exits distinctly from usage errors") {
    write_text_file(ws.file("big.cfg"),
                    "eps_c = 1e-3\n"
                    "prep = thermal:50\n"
                    "grid = 0,1\n");
    const auto r = run_cli(ws,
                           "ramsey --config \"" + ws.file("big.cfg") +
                               "\" --out \"" + ws.file("big") + "\"",
                           "PROPERTIME_DIM_CAP=64");
    CHECK(r.exit_code == 3);
    CHECK(run_cli(ws, "ramsey --config \"" + ws.file("big.cfg") +
                          "\" --out \"" + ws.file("big") + "\" --dim 1")
              .exit_code == 2);
  }
}
