// End-to-end runs of the qmock binary: exit codes, JSON shape and config precedence.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = (env.empty() ? "" : "env " + env + " ") + std::string(QMOCK_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json runJson(const std::string& args, int expectCode, const std::string& env = "") {
  // stderr is folded in by run(); JSON commands print nothing else to stdout
  Run r = run(args + " --json -", env);
  CAPTURE(args);
  CAPTURE(r.out);
  CHECK(r.code == expectCode);
  return Json::parse(r.out);
}

fs::path scratch(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / ("qmock_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("verify --bogus").code == 2);
    CHECK(run("verify").code == 2);
    CHECK(run("verify --all --order 0").code == 2);
    CHECK(run("verify --all --order x").code == 2);
    CHECK(run("verify --all --precision-bits 32").code == 2);
    CHECK(run("verify --all --parallelism 0").code == 2);
    CHECK(run("verify --all --config /nonexistent/qmock.conf").code == 2);
    CHECK(run("verify --all --registry /nonexistent/ids.qid").code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("unknown identity") {
    Run r = run("verify --id nosuch");
    CHECK(r.code == 2);
    CHECK(r.out.find("unknown identity") != std::string::npos);
  }

  TEST_CASE("list") {
    Json j = runJson("list", 0);
    REQUIRE(j.is_array());
    bool fine = false;
    for (const auto& e : j) {
      CHECK_FALSE(e["ref"].get<std::string>().empty());
      if (e["id"] == "fine") fine = true;
    }
    CHECK(fine);
    Json mt8 = runJson("list --filter 'mt8-*'", 0);
    CHECK(mt8.size() == 8);
    for (const auto& e : mt8) CHECK(e["id"].get<std::string>().rfind("mt8-", 0) == 0);
    auto empty = scratch("empty.qid", "# no identities\n");
    Run r = run("list --registry " + empty.string());
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(runJson("list --registry " + empty.string(), 0).empty());
  }

  TEST_CASE("verify pass, fail and error") {
    Json j = runJson("verify --id fine --order 60", 0);
    CHECK(j["runs"][0]["status"] == "pass");
    CHECK(j["summary"]["fail"] == 0);

    Json p = runJson("verify --id fine --order 60 --perturb 30", 1);
    CHECK(p["runs"][0]["status"] == "fail");
    CHECK(p["runs"][0]["first_mismatch"]["exponent"] == 30);

    auto bad = scratch("bad.qid",
                       "id: wrong\nref: none\nsection: test\nmode: exact\nlhs: 1/(1-q)\nrhs: 1 + q + q^2\n\n"
                       "id: right\nref: none\nsection: test\nmode: exact\nlhs: 1/(1-q)\nrhs: sum(n=0..inf, q^n)\n");
    Json b = runJson("verify --all --order 10 --registry " + bad.string(), 1);
    CHECK(b["summary"]["pass"] == 1);
    CHECK(b["summary"]["fail"] == 1);
    CHECK(b["runs"][1]["first_mismatch"]["exponent"] == 3);

    auto err = scratch("err.qid", "id: boom\nref: none\nsection: test\nmode: exact\nlhs: 1/poch(1;q;inf)\nrhs: 1\n");
    Json e = runJson("verify --all --order 10 --registry " + err.string(), 1);
    CHECK(e["summary"]["error"] == 1);
  }

  TEST_CASE("deterministic JSON does not depend on parallelism") {
    Run a = run("verify --filter 'f5-*' --order 30 --deterministic --parallelism 1 --json -");
    Run b = run("verify --filter 'f5-*' --order 30 --deterministic --parallelism 3 --json -");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("radial") {
    CHECK(run("radial --case rad-phi3 --root-order 3 --root-index 1").code == 2);
    CHECK(run("radial --case rad-phi3 --root-order 4 --root-index 2").code == 2);
    CHECK(run("radial --case rad-nosuch --root-order 4").code == 2);
    CHECK(run("radial --case rad-phi3 --root-order 4 --radii 0.5,0.4").code == 2);
    Json j = runJson("radial --case rad-phi3 --root-order 4 --root-index 1 --no-direct", 0);
    CHECK(j["target"]["short"] == "-2i");
    CHECK(j["final_residual"].get<double>() < 1e-3);
    CHECK(j["trend"] == "monotone-converging");
    CHECK(j["radii"].size() == 17);
    CHECK(j["differences"][0]["re"].is_string());
    Json s = runJson("radial --case rad-S0-zeta8 --root-order 8 --root-index 1 --no-direct", 0);
    CHECK(s["target"]["short"] == "1+i");
    CHECK(s["alt_target"]["short"] == "1+i");
    Json few = runJson("radial --case rad-phi3 --root-order 4 --radii 0.5,0.75 --no-direct", 1);
    CHECK(few["radii"].size() == 2);
  }

  TEST_CASE("conjecture") {
    Json j = runJson("conjecture --id psiq4eq4 --max-k 4", 0);
    CHECK(j["label"] == "CONJECTURE");
    for (const auto& r : j["rows"]) CHECK(r["agree"] == true);
    Json one = runJson("conjecture --id conj-mock8radeq4 --max-k 0", 0);
    CHECK(one["rows"].size() == 1);
    CHECK(one["rows"][0]["root_order"] == 1);
    CHECK(run("conjecture --id nosuch").code == 2);
    CHECK(run("conjecture --id psiq4eq4 --max-k -1").code == 2);
  }

  TEST_CASE("series") {
    Run f3 = run("series --name f3 --order 8");
    CHECK(f3.code == 0);
    CHECK(f3.out.find("q^7     7") != std::string::npos);
    Json p = runJson("series --name psi3 --order 2", 0);
    CHECK(p["coefficients"][0]["coefficient"] == "0");
    Json part = runJson("series --expr '1/poch(q;q;inf)' --order 6", 0);
    std::vector<std::string> expect = {"1", "1", "2", "3", "5", "7"};
    REQUIRE(part["coefficients"].size() == 6);
    for (int n = 0; n < 6; ++n) CHECK(part["coefficients"][n]["coefficient"] == expect[n]);
    CHECK(run("series --expr 'q^' --order 4").code == 2);
    CHECK(run("series --expr 's*q' --order 4").code == 2);
    CHECK(run("series --name f7").code == 2);
    CHECK(run("series --name f3 --expr q").code == 2);
  }

  TEST_CASE("config precedence: defaults < file < environment < flags") {
    auto conf = scratch("run.conf", "# test config\norder = 30\nprecision_bits = 100\n");
    std::string conj = "conjecture --id psiq4eq4 --max-k 0 --config " + conf.string();
    CHECK(runJson(conj, 0)["precision_bits"] == 100);
    CHECK(runJson(conj, 0, "QMOCK_PRECISION_BITS=120")["precision_bits"] == 120);
    CHECK(runJson(conj + " --precision-bits 140", 0, "QMOCK_PRECISION_BITS=120")["precision_bits"] == 140);
    CHECK(runJson("conjecture --id psiq4eq4 --max-k 0", 0)["precision_bits"] == 212);
    CHECK(runJson("verify --id fine --config " + conf.string(), 0)["runs"][0]["order"] == 30);
    CHECK(runJson("verify --id fine --order 20 --config " + conf.string(), 0)["runs"][0]["order"] == 20);
    auto bad = scratch("bad.conf", "colour = blue\n");
    CHECK(run("verify --id fine --config " + bad.string()).code == 2);
    CHECK(run("verify --id fine", "QMOCK_PRECISION_BITS=abc").code == 2);
  }

  TEST_CASE("report keeps conjectures apart") {
    Json j = runJson("report --filter fine --order 30 --skip-radial --max-k 1 --deterministic", 0);
    CHECK(j["identities"]["summary"]["pass"] == 1);
    CHECK(j.contains("CONJECTURE"));
    CHECK_FALSE(j.contains("radial"));
    for (const auto& c : j["CONJECTURE"]) CHECK(c["label"] == "CONJECTURE");
  }
}
