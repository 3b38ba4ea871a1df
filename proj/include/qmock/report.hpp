#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qmock/identities.hpp"
#include "qmock/radial.hpp"

namespace qmock::report {

using Json = nlohmann::ordered_json;

// decimal digits used for every complex number in reports
int digitsFor(mpfr_prec_t bits);

// {"re": "...", "im": "..."} as decimal strings
Json complexJson(const numeric::Complex& z, int digits);
// short human form rounded to 12 places: "-2i", "1+i", "4", "0.5857864376-3.414213562i"
std::string shortComplex(const numeric::Complex& z);

Json exponentJson(const Exponent& e);

// elapsed_ms is forced to 0 when deterministic
Json verifyJson(const std::vector<VerificationReport>& runs, bool deterministic);
std::string verifyText(const std::vector<VerificationReport>& runs);

Json radialJson(const RadialProbeResult& r, mpfr_prec_t bits, bool pass);
std::string radialText(const RadialProbeResult& r);

Json conjectureJson(const ConjectureDef& c, const std::vector<ConjectureRow>& rows, long maxK, mpfr_prec_t bits);
std::string conjectureText(const ConjectureDef& c, const std::vector<ConjectureRow>& rows, mpfr_prec_t bits);

struct ListEntry {
  std::string kind;  // identity, radial, conjecture
  std::string id;
  std::string ref;
  std::string detail;  // section, mode or root class
};
Json listJson(const std::vector<ListEntry>& entries);
std::string listText(const std::vector<ListEntry>& entries);

// one row per exponent from min(0, valuation) up to the order, zeros included
Json seriesJson(const std::string& label, const Series& s);
std::string seriesText(const std::string& label, const Series& s);

}  // namespace qmock::report
