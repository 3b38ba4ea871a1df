#include "qmock/identities.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"

namespace qmock {

extern const char* const kEmbeddedRegistry;

const char* modeName(VerifyMode m) {
  switch (m) {
    case VerifyMode::Exact: return "exact";
    case VerifyMode::Cesaro: return "cesaro";
    case VerifyMode::Sampled: return "sampled";
  }
  return "?";
}

const char* statusName(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "pass";
    case VerifyStatus::Fail: return "fail";
    case VerifyStatus::Error: return "error";
  }
  return "?";
}

const IdentityRecord* Registry::find(const std::string& id) const {
  for (const auto& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::string key;
  std::string value;
  std::vector<std::string> lines;  // continuation lines kept apart (tuples)
  int line;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw Error(ErrorKind::RegistryError, source + ":" + std::to_string(line) + ": " + msg);
}

ParameterTuple parseTuple(const std::string& text, const std::string& source, int line) {
  ParameterTuple t;
  t.text = trim(text);
  std::string norm = t.text;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::istringstream in(norm);
  std::string item;
  while (in >> item) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) fail(source, line, "binding '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    try {
      t.bindings[name] = Monomial::parse(item.substr(eq + 1));
    } catch (const Error& e) {
      fail(source, line, "bad value for '" + name + "': " + e.what());
    }
  }
  if (t.bindings.empty()) fail(source, line, "empty tuple");
  return t;
}

IdentityRecord buildRecord(const std::vector<Field>& fields, const std::string& source, const RegistryOptions& opts) {
  IdentityRecord rec;
  rec.line = fields.front().line;
  std::vector<std::string> cesaroFlags;
  const Field *lhs = nullptr, *rhs = nullptr;
  std::vector<const Field*> mids;
  bool haveMode = false;
  for (const auto& f : fields) {
    if (f.key == "id") rec.id = f.value;
    else if (f.key == "ref") rec.ref = f.value;
    else if (f.key == "section") rec.section = f.value;
    else if (f.key == "order") {
      try {
        auto m = Monomial::parse("q^(" + f.value + ")");
        if (m.exponent.sign() <= 0) throw Error(ErrorKind::RegistryError, "order must be positive");
        rec.maxOrder = m.exponent;
      } catch (const Error& e) {
        fail(source, f.line, std::string("bad order: ") + e.what());
      }
    } else if (f.key == "mode") {
      std::istringstream in(f.value);
      std::string word;
      in >> word;
      haveMode = true;
      if (word == "exact") rec.mode = VerifyMode::Exact;
      else if (word == "sampled") rec.mode = VerifyMode::Sampled;
      else if (word == "cesaro") {
        rec.mode = VerifyMode::Cesaro;
        while (in >> word) cesaroFlags.push_back(word);
        if (cesaroFlags.empty()) fail(source, f.line, "cesaro mode needs the sides it applies to");
      } else fail(source, f.line, "unknown mode '" + word + "'");
    } else if (f.key == "lhs") lhs = &f;
    else if (f.key == "rhs") rhs = &f;
    else if (f.key == "mid") mids.push_back(&f);
    else if (f.key == "tuples") {
      if (!f.value.empty()) rec.tuples.push_back(parseTuple(f.value, source, f.line));
      for (std::size_t k = 0; k < f.lines.size(); ++k)
        rec.tuples.push_back(parseTuple(f.lines[k], source, f.line + 1 + static_cast<int>(k)));
    } else fail(source, f.line, "unknown key '" + f.key + "'");
  }
  if (rec.id.empty()) fail(source, rec.line, "stanza without id");
  if (!haveMode) fail(source, rec.line, rec.id + ": missing mode");
  if (!lhs || !rhs) fail(source, rec.line, rec.id + ": needs lhs and rhs");

  auto addSide = [&](const Field* f, std::string label) {
    IdentitySide s;
    s.label = std::move(label);
    s.text = f->value;
    try {
      s.ast = dsl::parseExpression(f->value, f->line);
    } catch (const Error& e) {
      fail(source, f->line, rec.id + " " + s.label + ": " + e.what());
    }
    rec.sides.push_back(std::move(s));
  };
  addSide(lhs, "lhs");
  for (std::size_t k = 0; k < mids.size(); ++k) addSide(mids[k], "mid" + std::to_string(k + 1));
  addSide(rhs, "rhs");

  for (const auto& flag : cesaroFlags) {
    bool hit = false;
    for (auto& s : rec.sides) {
      bool match = flag == "all" || flag == s.label || (flag == "mid" && s.label.rfind("mid", 0) == 0);
      if (match) s.cesaro = hit = true;
    }
    if (!hit) fail(source, rec.line, rec.id + ": cesaro flag '" + flag + "' names no side");
  }

  if (rec.mode == VerifyMode::Sampled && rec.tuples.size() < 3)
    fail(source, rec.line, rec.id + ": sampled entries need at least 3 tuples");
  if (rec.mode != VerifyMode::Sampled && !rec.tuples.empty())
    fail(source, rec.line, rec.id + ": tuples are only allowed in sampled mode");

  std::set<std::string> freeNames;
  for (const auto& s : rec.sides)
    for (const auto& n : dsl::freeParameters(s.ast)) freeNames.insert(n);
  if (rec.mode != VerifyMode::Sampled && !freeNames.empty())
    fail(source, rec.line, rec.id + ": free parameter '" + *freeNames.begin() + "' in a non-sampled entry");
  for (const auto& t : rec.tuples) {
    for (const auto& n : freeNames)
      if (!t.bindings.count(n)) fail(source, rec.line, rec.id + ": tuple '" + t.text + "' leaves '" + n + "' unbound");
    if (!opts.validateTuples) continue;
    for (const auto& s : rec.sides) {
      dsl::EvalOptions eo = opts.eval;
      eo.allowCesaro = s.cesaro;
      auto v = dsl::checkFormalValidity(s.ast, t.bindings, eo);
      if (!v.ok) fail(source, rec.line, rec.id + ": tuple '" + t.text + "' is not valid for " + s.label + ": " + v.message);
    }
  }
  return rec;
}

}  // namespace

Registry parseRegistry(const std::string& text, const std::string& source, const RegistryOptions& opts) {
  Registry reg;
  reg.source = source;
  std::vector<Field> fields;
  auto flush = [&]() {
    if (fields.empty()) return;
    IdentityRecord rec = buildRecord(fields, source, opts);
    if (reg.find(rec.id)) fail(source, rec.line, "duplicate id '" + rec.id + "'");
    reg.records.push_back(std::move(rec));
    fields.clear();
  };
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string t = trim(raw);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t[0] == '#') continue;
    if (raw[0] == ' ' || raw[0] == '\t') {
      if (fields.empty()) fail(source, lineNo, "continuation line outside a stanza");
      Field& f = fields.back();
      if (f.key == "tuples") f.lines.push_back(t);
      else f.value += " " + t;
      continue;
    }
    auto colon = t.find(':');
    if (colon == std::string::npos) fail(source, lineNo, "expected 'key: value'");
    fields.push_back(Field{trim(t.substr(0, colon)), trim(t.substr(colon + 1)), {}, lineNo});
  }
  flush();
  std::sort(reg.records.begin(), reg.records.end(),
            [](const IdentityRecord& a, const IdentityRecord& b) { return a.id < b.id; });
  return reg;
}

Registry loadRegistryFile(const std::string& path, const RegistryOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::RegistryError, "cannot read registry file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseRegistry(buf.str(), path, opts);
}

const Registry& embeddedRegistry() {
  static const Registry reg = parseRegistry(kEmbeddedRegistry, "embedded");
  return reg;
}

Exponent effectiveOrder(const IdentityRecord& rec, const Exponent& order) {
  if (rec.maxOrder && *rec.maxOrder < order) return *rec.maxOrder;
  return order;
}

VerificationReport verify(const IdentityRecord& rec, const Exponent& order, const VerifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = rec.id;
  rep.mode = rec.mode;
  rep.order = effectiveOrder(rec, order);
  for (const auto& t : rec.tuples) rep.tuples.push_back(t.text);

  std::vector<const ParameterTuple*> runs;
  ParameterTuple none;
  if (rec.tuples.empty()) runs.push_back(&none);
  for (const auto& t : rec.tuples) runs.push_back(&t);

  try {
    for (const ParameterTuple* t : runs) {
      std::vector<Series> values;
      for (const auto& s : rec.sides) {
        dsl::EvalOptions eo = opts.eval;
        eo.allowCesaro = s.cesaro;
        Series v = dsl::evaluate(s.ast, rep.order, t->bindings, eo);
        if (v.order() && *v.order() < rep.order)
          throw Error(ErrorKind::EvaluationError,
                      s.label + " is only known to O(q^" + v.order()->toString() + ")");
        values.push_back(std::move(v));
      }
      if (opts.perturbation && *opts.perturbation < rep.order)
        values.back() = (values.back() + Series::monomial(1, *opts.perturbation)).truncated(rep.order);
      std::optional<Mismatch> best;
      for (std::size_t k = 1; k < values.size(); ++k) {
        Series diff = (values[0] - values[k]).truncated(rep.order);
        if (diff.isZero()) continue;
        Exponent e = *diff.valuation();
        if (!best || e < best->exponent)
          best = Mismatch{e, values[0].coefficient(e), values[k].coefficient(e), rec.sides[k].label, t->text};
      }
      if (best) {
        rep.status = VerifyStatus::Fail;
        rep.firstMismatch = best;
        break;
      }
    }
  } catch (const std::exception& e) {
    rep.status = VerifyStatus::Error;
    rep.message = e.what();
    rep.firstMismatch.reset();
  }
  rep.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

bool RecordFilter::matches(const IdentityRecord& rec) const {
  if (idGlob && fnmatch(idGlob->c_str(), rec.id.c_str(), 0) != 0) return false;
  if (section && rec.section != *section) return false;
  return true;
}

std::vector<VerificationReport> verifyAll(const Registry& reg, const Exponent& order, const RecordFilter& filter,
                                          int parallelism, const VerifyOptions& opts) {
  std::vector<const IdentityRecord*> todo;
  for (const auto& r : reg.records)
    if (filter.matches(r)) todo.push_back(&r);
  std::vector<VerificationReport> out(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) out[k] = verify(*todo[k], order, opts);
  };
  int n = std::max(1, std::min<int>(parallelism, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace qmock
