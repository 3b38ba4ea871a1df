#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fnmatch.h>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qmock/dsl/evaluator.hpp"
#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/identities.hpp"
#include "qmock/mocktheta.hpp"
#include "qmock/radial.hpp"
#include "qmock/report.hpp"

using namespace qmock;
using report::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Exponent order = 60;
  long bits = 212;
  std::optional<std::string> filter;
  std::optional<std::string> section;
  std::optional<std::string> json;  // "-" is stdout
  int parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<std::vector<double>> radii;
  std::optional<std::string> registry;
  bool deterministic = false;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parseLong(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(trim(text), &used);
    if (used == trim(text).size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": expected an integer, got '" + text + "'");
}

Exponent parseOrder(const std::string& text, const std::string& what) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Exponent(parseLong(text, what));
  long d = parseLong(text.substr(slash + 1), what);
  if (d == 0) throw UsageError(what + ": zero denominator");
  return Exponent(parseLong(text.substr(0, slash), what), d);
}

bool parseBool(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw UsageError(what + ": expected true or false, got '" + text + "'");
}

std::vector<double> parseRadii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double t = std::stod(trim(item), &used);
      if (used != trim(item).size()) throw std::invalid_argument(item);
      out.push_back(t);
    } catch (const std::exception&) {
      throw UsageError("radii: cannot read '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("radii: empty list");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0 && out[i] < 1)) throw UsageError("radii must lie strictly between 0 and 1");
    if (i > 0 && !(out[i] > out[i - 1])) throw UsageError("radii must be increasing");
  }
  return out;
}

void applySetting(RunConfig& cfg, const std::string& key, const std::string& value) {
  std::string k = key;
  std::replace(k.begin(), k.end(), '_', '-');
  if (k == "order") cfg.order = parseOrder(value, "order");
  else if (k == "precision-bits") cfg.bits = parseLong(value, "precision-bits");
  else if (k == "filter") cfg.filter = value;
  else if (k == "section") cfg.section = value;
  else if (k == "json") cfg.json = value;
  else if (k == "parallelism") cfg.parallelism = static_cast<int>(parseLong(value, "parallelism"));
  else if (k == "radii") cfg.radii = parseRadii(value);
  else if (k == "registry") cfg.registry = value;
  else if (k == "deterministic") cfg.deterministic = parseBool(value, "deterministic");
  else throw UsageError("unknown config key '" + key + "'");
}

// key = value per line, '#' comments
void loadConfigFile(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineNo) + ": expected 'key = value'");
    applySetting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.order.sign() <= 0) throw UsageError("order must be positive");
  if (cfg.bits < 64) throw UsageError("precision-bits must be at least 64");
  if (cfg.parallelism < 1) throw UsageError("parallelism must be at least 1");
}

bool globMatch(const std::optional<std::string>& glob, const std::string& id) {
  return !glob || fnmatch(glob->c_str(), id.c_str(), 0) == 0;
}

// JSON goes to the --json target; text goes to stdout unless JSON already does
void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  if (!cfg.json) {
    std::cout << text;
    return;
  }
  std::string body = j.dump(2) + "\n";
  if (*cfg.json == "-") {
    std::cout << body;
    return;
  }
  std::cout << text;
  std::ofstream out(*cfg.json, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + *cfg.json + "'");
  out << body;
}

Registry loadRegistry(const RunConfig& cfg) {
  if (!cfg.registry) return embeddedRegistry();
  try {
    return loadRegistryFile(*cfg.registry);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <class T, class F>
std::vector<T> parallelMap(std::size_t n, int workers, F fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < n;) out[i] = fn(i);
  };
  int w = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  return out;
}

// ---- commands ---------------------------------------------------------------

int cmdList(const RunConfig& cfg) {
  Registry reg = loadRegistry(cfg);
  std::vector<report::ListEntry> entries;
  RecordFilter f{cfg.filter, cfg.section};
  for (const auto& r : reg.records)
    if (f.matches(r)) entries.push_back({"identity", r.id, r.ref, r.section + ", " + modeName(r.mode)});
  // a user registry lists only its own entries
  if (!cfg.registry && !cfg.section) {
    for (const auto& c : radialCases())
      if (globMatch(cfg.filter, c.id)) entries.push_back({"radial", c.id, c.ref, c.rootClass});
    for (const auto& c : conjectures())
      if (globMatch(cfg.filter, "conj-" + c.id)) entries.push_back({"conjecture", "conj-" + c.id, c.ref, "CONJECTURE"});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  emit(cfg, report::listJson(entries), report::listText(entries));
  return kExitPass;
}

std::vector<VerificationReport> runVerify(const RunConfig& cfg, const Registry& reg, const std::vector<std::string>& ids,
                                          const VerifyOptions& vo) {
  if (ids.empty()) return verifyAll(reg, cfg.order, RecordFilter{cfg.filter, cfg.section}, cfg.parallelism, vo);
  Registry chosen;
  chosen.source = reg.source;
  for (const auto& id : ids) {
    const IdentityRecord* r = reg.find(id);
    if (!r) throw UsageError("unknown identity '" + id + "'");
    chosen.records.push_back(*r);
  }
  return verifyAll(chosen, cfg.order, RecordFilter{cfg.filter, cfg.section}, cfg.parallelism, vo);
}

int exitFor(const std::vector<VerificationReport>& runs) {
  for (const auto& r : runs)
    if (r.status != VerifyStatus::Pass) return kExitFail;
  return kExitPass;
}

int cmdVerify(const RunConfig& cfg, const std::vector<std::string>& ids, bool all, const std::string& perturb) {
  if (ids.empty() && !all && !cfg.filter && !cfg.section)
    throw UsageError("verify needs --id, --all, --filter or --section");
  Registry reg = loadRegistry(cfg);
  VerifyOptions vo;
  if (!perturb.empty()) vo.perturbation = parseOrder(perturb, "perturb");
  auto runs = runVerify(cfg, reg, ids, vo);
  emit(cfg, report::verifyJson(runs, cfg.deterministic), report::verifyText(runs));
  return exitFor(runs);
}

struct ProbeOutcome {
  RadialProbeResult result;
  bool pass = false;
};

ProbeOutcome probe(const RunConfig& cfg, const RadialCase& c, const PrimitiveRoot& root, double tolerance, bool direct) {
  ProbeOptions po;
  po.bits = cfg.bits;
  if (cfg.radii) po.schedule = *cfg.radii;
  po.direct = direct;
  ProbeOutcome o;
  o.result = radialProbe(c, root, po);
  const auto& r = o.result;
  o.pass = r.errors.empty() && r.trend == Trend::MonotoneConverging && r.finalResidual < tolerance &&
           (!r.altFinalResidual || *r.altFinalResidual < tolerance);
  return o;
}

std::vector<std::pair<const RadialCase*, PrimitiveRoot>> sampleProbes(const std::optional<std::string>& glob) {
  std::vector<std::pair<const RadialCase*, PrimitiveRoot>> todo;
  for (const auto& c : radialCases())
    if (globMatch(glob, c.id))
      for (const auto& z : c.sampleRoots) todo.emplace_back(&c, z);
  return todo;
}

int cmdRadial(const RunConfig& cfg, const std::string& caseId, std::optional<long> rootOrder, long rootIndex,
              double tolerance, bool direct) {
  const RadialCase* c = findRadialCase(caseId);
  if (!c) throw UsageError("unknown radial case '" + caseId + "'");
  if (rootOrder) {
    PrimitiveRoot root;
    try {
      root = PrimitiveRoot(*rootOrder, rootIndex);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (!c->admits(root))
      throw UsageError(c->id + " needs a primitive root with " + c->rootClass + ", got " + root.toString());
    ProbeOutcome o = probe(cfg, *c, root, tolerance, direct);
    emit(cfg, report::radialJson(o.result, cfg.bits, o.pass), report::radialText(o.result));
    return o.pass ? kExitPass : kExitFail;
  }
  // no root given: the case's sample roots
  auto outcomes = parallelMap<ProbeOutcome>(c->sampleRoots.size(), cfg.parallelism, [&](std::size_t i) {
    return probe(cfg, *c, c->sampleRoots[i], tolerance, direct);
  });
  Json j;
  j["probes"] = Json::array();
  std::string text;
  bool all = true;
  for (const auto& o : outcomes) {
    j["probes"].push_back(report::radialJson(o.result, cfg.bits, o.pass));
    text += report::radialText(o.result) + "\n";
    all = all && o.pass;
  }
  emit(cfg, j, text);
  return all ? kExitPass : kExitFail;
}

int cmdConjecture(const RunConfig& cfg, const std::string& id, long maxK) {
  const ConjectureDef* c = findConjecture(id);
  if (!c) throw UsageError("unknown conjecture '" + id + "'");
  if (maxK < 0) throw UsageError("max-k must be >= 0");
  auto rows = conjectureCheck(*c, maxK, cfg.bits);
  bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.agree; });
  emit(cfg, report::conjectureJson(*c, rows, maxK, cfg.bits), report::conjectureText(*c, rows, cfg.bits));
  return all ? kExitPass : kExitFail;
}

int cmdSeries(const RunConfig& cfg, const std::string& name, const std::string& expr) {
  if (name.empty() == expr.empty()) throw UsageError("series needs exactly one of --name or --expr");
  Series s;
  std::string label;
  if (!name.empty()) {
    auto id = mockThetaByName(name);
    if (!id) throw UsageError("unknown mock theta function '" + name + "'");
    s = build(id->name, cfg.order);
    label = name;
  } else {
    dsl::NodePtr ast;
    try {
      ast = dsl::parseExpression(expr);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    auto free = dsl::freeParameters(ast);
    if (!free.empty()) throw UsageError("UnboundVariable: '" + *free.begin() + "'");
    dsl::EvalOptions eo;
    eo.allowCesaro = true;
    s = dsl::evaluate(ast, cfg.order, {}, eo);
    label = dsl::print(ast);
  }
  emit(cfg, report::seriesJson(label, s), report::seriesText(label, s));
  return kExitPass;
}

int cmdReport(const RunConfig& cfg, bool skipRadial, bool skipConjectures, long maxK) {
  Registry reg = loadRegistry(cfg);
  auto runs = verifyAll(reg, cfg.order, RecordFilter{cfg.filter, cfg.section}, cfg.parallelism);
  bool ok = exitFor(runs) == kExitPass;
  Json j;
  j["identities"] = report::verifyJson(runs, cfg.deterministic);
  std::string text = "== identities\n" + report::verifyText(runs);

  if (!skipRadial) {
    auto todo = sampleProbes(std::nullopt);
    auto outcomes = parallelMap<ProbeOutcome>(todo.size(), cfg.parallelism, [&](std::size_t i) {
      return probe(cfg, *todo[i].first, todo[i].second, 1e-2, false);
    });
    Json probes = Json::array();
    text += "== radial limits\n";
    char buf[200];
    for (const auto& o : outcomes) {
      probes.push_back(report::radialJson(o.result, cfg.bits, o.pass));
      std::snprintf(buf, sizeof buf, "%-6s%-14s %-18s target %-28s final residual %.3e  %s\n", o.pass ? "pass" : "fail",
                    o.result.caseId.c_str(), o.result.root.toString().c_str(),
                    report::shortComplex(o.result.target).c_str(), o.result.finalResidual, trendName(o.result.trend));
      text += buf;
      ok = ok && o.pass;
    }
    j["radial"] = probes;
  }

  if (!skipConjectures) {
    Json conj = Json::array();
    text += "== CONJECTURE (numerical evidence only)\n";
    for (const auto& c : conjectures()) {
      auto rows = conjectureCheck(c, maxK, cfg.bits);
      conj.push_back(report::conjectureJson(c, rows, maxK, cfg.bits));
      text += report::conjectureText(c, rows, cfg.bits);
      for (const auto& r : rows) ok = ok && r.agree;
    }
    j["CONJECTURE"] = conj;
  }
  emit(cfg, j, text);
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmock: exact and numeric verification of mock theta function identities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string orderText, bitsText, configPath, filter, section, jsonPath, radiiText, registryPath, parText;
  bool deterministic = false;
  auto* oOrder = app.add_option("--order", orderText, "truncation order, e.g. 60 or 121/2 (default 60)");
  auto* oBits = app.add_option("--precision-bits", bitsText, "working precision in bits (default 212, >= 64)");
  auto* oConfig = app.add_option("--config", configPath, "file of 'key = value' lines, applied under env and flags");
  auto* oFilter = app.add_option("--filter", filter, "id glob, e.g. 'mt8-*'");
  auto* oSection = app.add_option("--section", section, "registry section, e.g. sixth-order");
  auto* oJson = app.add_option("--json", jsonPath, "write JSON to this path ('-' or no value: stdout)")->expected(0, 1);
  auto* oPar = app.add_option("--parallelism", parText, "worker threads");
  auto* oRadii = app.add_option("--radii", radiiText, "comma separated radii in (0,1), increasing");
  auto* oRegistry = app.add_option("--registry", registryPath, "identity file used instead of the built-in registry");
  auto* oDet = app.add_flag("--deterministic", deterministic, "zero timings so JSON is byte-stable");

  auto* list = app.add_subcommand("list", "list identities, radial cases and conjectures");

  auto* verify = app.add_subcommand("verify", "check identities coefficientwise");
  std::vector<std::string> ids;
  bool all = false;
  std::string perturb;
  verify->add_option("--id", ids, "identity id (repeatable)");
  verify->add_flag("--all", all, "every registered identity");
  verify->add_option("--perturb", perturb, "add q^e to every right-hand side (negative control)");

  auto* radial = app.add_subcommand("radial", "probe a radial limit");
  std::string caseId;
  long rootOrder = 0, rootIndex = 1;
  double tolerance = 1e-2;
  bool noDirect = false;
  radial->add_option("--case", caseId, "radial case id, e.g. rad-phi3")->required();
  auto* oRootOrder = radial->add_option("--root-order", rootOrder, "order m of zeta = exp(2 pi i j/m)");
  radial->add_option("--root-index", rootIndex, "index j (default 1)");
  radial->add_option("--tolerance", tolerance, "final residual needed to pass (default 1e-2)");
  radial->add_flag("--no-direct", noDirect, "skip the direct mock - theta cross-check");

  auto* conj = app.add_subcommand("conjecture", "numerical check of a conjectured finite-sum identity");
  std::string conjId;
  long maxK = 4;
  conj->add_option("--id", conjId, "psiq4eq4, psiq4eq5 or mock8radeq4")->required();
  conj->add_option("--max-k", maxK, "largest k; roots of odd orders up to 2k+1 (default 4)");

  auto* series = app.add_subcommand("series", "print series coefficients");
  std::string name, expr;
  series->add_option("--name", name, "mock theta function, e.g. f3");
  series->add_option("--expr", expr, "expression, e.g. '1/poch(q;q;inf)'");

  auto* rep = app.add_subcommand("report", "identities, radial limits and conjectures in one report");
  bool skipRadial = false, skipConj = false;
  long reportMaxK = 4;
  rep->add_flag("--skip-radial", skipRadial);
  rep->add_flag("--skip-conjectures", skipConj);
  rep->add_option("--max-k", reportMaxK, "largest k for the conjectures (default 4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    // defaults < config file < environment < flags
    RunConfig cfg;
    if (oConfig->count()) loadConfigFile(cfg, configPath);
    if (const char* env = std::getenv("QMOCK_PRECISION_BITS"); env && *env)
      cfg.bits = parseLong(env, "QMOCK_PRECISION_BITS");
    if (oOrder->count()) cfg.order = parseOrder(orderText, "order");
    if (oBits->count()) cfg.bits = parseLong(bitsText, "precision-bits");
    if (oFilter->count()) cfg.filter = filter;
    if (oSection->count()) cfg.section = section;
    if (oJson->count()) cfg.json = jsonPath.empty() ? "-" : jsonPath;
    if (oPar->count()) cfg.parallelism = static_cast<int>(parseLong(parText, "parallelism"));
    if (oRadii->count()) cfg.radii = parseRadii(radiiText);
    if (oRegistry->count()) cfg.registry = registryPath;
    if (oDet->count()) cfg.deterministic = deterministic;
    validate(cfg);

    if (list->parsed()) return cmdList(cfg);
    if (verify->parsed()) return cmdVerify(cfg, ids, all, perturb);
    if (radial->parsed())
      return cmdRadial(cfg, caseId, oRootOrder->count() ? std::optional<long>(rootOrder) : std::nullopt, rootIndex,
                       tolerance, !noDirect);
    if (conj->parsed()) return cmdConjecture(cfg, conjId, maxK);
    if (series->parsed()) return cmdSeries(cfg, name, expr);
    if (rep->parsed()) return cmdReport(cfg, skipRadial, skipConj, reportMaxK);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::RootClassMismatch ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
