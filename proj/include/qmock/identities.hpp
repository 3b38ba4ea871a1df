#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmock/dsl/evaluator.hpp"

namespace qmock {

enum class VerifyMode { Exact, Cesaro, Sampled };
const char* modeName(VerifyMode m);

struct IdentitySide {
  std::string label;  // "lhs", "mid1", ..., "rhs"
  std::string text;
  dsl::NodePtr ast;
  bool cesaro = false;
};

struct ParameterTuple {
  std::string text;  // as written, e.g. "a=-1 c=2 z=q"
  dsl::ParamBindings bindings;
};

struct IdentityRecord {
  std::string id;
  std::string ref;
  std::string section;
  VerifyMode mode = VerifyMode::Exact;
  std::optional<Exponent> maxOrder;  // entries checked against a printed expansion stop there
  std::vector<IdentitySide> sides;   // lhs, any intermediate members of the chain, rhs
  std::vector<ParameterTuple> tuples;
  int line = 0;  // first line of the stanza in its file
};

struct Registry {
  std::string source;  // "embedded" or the file path
  std::vector<IdentityRecord> records;

  const IdentityRecord* find(const std::string& id) const;
};

struct RegistryOptions {
  bool validateTuples = true;  // every tuple of a sampled entry must pass formal validity
  dsl::EvalOptions eval;
};

// stanza format: "key: value" lines, blank line between records, indented lines continue a value
Registry parseRegistry(const std::string& text, const std::string& source, const RegistryOptions& opts = {});
Registry loadRegistryFile(const std::string& path, const RegistryOptions& opts = {});
const Registry& embeddedRegistry();

enum class VerifyStatus { Pass, Fail, Error };
const char* statusName(VerifyStatus s);

struct Mismatch {
  Exponent exponent;
  Gaussian lhs, rhs;
  std::string side;        // label of the side that disagrees with lhs
  std::string tuple;       // empty unless sampled
};

struct VerificationReport {
  std::string id;
  VerifyMode mode = VerifyMode::Exact;
  Exponent order;
  VerifyStatus status = VerifyStatus::Pass;
  std::optional<Mismatch> firstMismatch;
  std::string message;  // error text when status == Error
  std::int64_t elapsedMs = 0;
  std::vector<std::string> tuples;
};

struct VerifyOptions {
  // adds q^p to the rhs: a seeded negative control
  std::optional<Exponent> perturbation;
  dsl::EvalOptions eval;
};

// order actually used for a record (its cap, if any, applies)
Exponent effectiveOrder(const IdentityRecord& rec, const Exponent& order);

VerificationReport verify(const IdentityRecord& rec, const Exponent& order, const VerifyOptions& opts = {});

struct RecordFilter {
  std::optional<std::string> idGlob;
  std::optional<std::string> section;
  bool matches(const IdentityRecord& rec) const;
};

// results sorted by id regardless of the number of workers
std::vector<VerificationReport> verifyAll(const Registry& reg, const Exponent& order, const RecordFilter& filter,
                                          int parallelism = 1, const VerifyOptions& opts = {});

}  // namespace qmock
