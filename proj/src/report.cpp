#include "qmock/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qmock::report {

int digitsFor(mpfr_prec_t bits) {
  // a couple of guard digits below what the precision carries
  return std::max(10, static_cast<int>(std::floor(static_cast<double>(bits) * 0.30103)) - 2);
}

Json complexJson(const numeric::Complex& z, int digits) {
  Json j;
  j["re"] = z.re().toString(digits);
  j["im"] = z.im().toString(digits);
  return j;
}

namespace {

std::string shortReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double snap(double v) {
  double r = std::round(v * 1e12) / 1e12;
  return std::fabs(r) < 1e-12 ? 0.0 : r;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

std::string shortComplex(const numeric::Complex& z) {
  double re = snap(z.re().toDouble()), im = snap(z.im().toDouble());
  if (im == 0) return shortReal(re);
  std::string imag = im == 1 ? "i" : im == -1 ? "-i" : shortReal(im) + "i";
  if (re == 0) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return shortReal(re) + imag;
}

Json exponentJson(const Exponent& e) {
  if (e.isInteger()) return e.num();
  return e.toString();
}

Json verifyJson(const std::vector<VerificationReport>& runs, bool deterministic) {
  Json out;
  out["runs"] = Json::array();
  long pass = 0, fail = 0, error = 0;
  for (const auto& r : runs) {
    Json j;
    j["id"] = r.id;
    j["mode"] = modeName(r.mode);
    j["order"] = exponentJson(r.order);
    j["status"] = statusName(r.status);
    if (r.firstMismatch) {
      const Mismatch& m = *r.firstMismatch;
      Json fm;
      fm["exponent"] = exponentJson(m.exponent);
      fm["lhs"] = m.lhs.toString();
      fm["rhs"] = m.rhs.toString();
      fm["side"] = m.side;
      if (!m.tuple.empty()) fm["tuple"] = m.tuple;
      j["first_mismatch"] = fm;
    } else {
      j["first_mismatch"] = nullptr;
    }
    j["elapsed_ms"] = deterministic ? 0 : r.elapsedMs;
    if (r.tuples.empty()) {
      j["tuples"] = nullptr;
    } else {
      j["tuples"] = r.tuples;
    }
    if (r.status == VerifyStatus::Error) j["message"] = r.message;
    out["runs"].push_back(std::move(j));
    switch (r.status) {
      case VerifyStatus::Pass: ++pass; break;
      case VerifyStatus::Fail: ++fail; break;
      case VerifyStatus::Error: ++error; break;
    }
  }
  out["summary"] = {{"pass", pass}, {"fail", fail}, {"error", error}};
  return out;
}

std::string verifyText(const std::vector<VerificationReport>& runs) {
  std::ostringstream os;
  long pass = 0, fail = 0, error = 0;
  for (const auto& r : runs) {
    os << pad(statusName(r.status), 6) << pad(r.id, 16) << pad(modeName(r.mode), 9) << "order " << pad(r.order.toString(), 5)
       << r.elapsedMs << " ms";
    if (!r.tuples.empty()) os << "  (" << r.tuples.size() << " tuples)";
    os << "\n";
    if (r.firstMismatch) {
      const Mismatch& m = *r.firstMismatch;
      os << "      first mismatch at q^" << m.exponent << ": lhs " << m.lhs << ", " << m.side << " " << m.rhs;
      if (!m.tuple.empty()) os << " [" << m.tuple << "]";
      os << "\n";
    }
    if (r.status == VerifyStatus::Error) os << "      " << r.message << "\n";
    (r.status == VerifyStatus::Pass ? pass : r.status == VerifyStatus::Fail ? fail : error)++;
  }
  os << "summary: " << pass << " pass, " << fail << " fail, " << error << " error\n";
  return os.str();
}

Json radialJson(const RadialProbeResult& r, mpfr_prec_t bits, bool pass) {
  int digits = digitsFor(bits);
  Json j;
  j["case"] = r.caseId;
  j["root"] = {{"order", r.root.order}, {"index", r.root.index}, {"value", r.root.toString()}};
  j["precision_bits"] = bits;
  j["radii"] = r.radii;
  Json diffs = Json::array();
  for (const auto& d : r.differences) diffs.push_back(complexJson(d, digits));
  j["differences"] = diffs;
  j["residuals"] = r.residuals;
  Json target = complexJson(r.target, digits);
  target["short"] = shortComplex(r.target);
  j["target"] = target;
  j["final_residual"] = r.finalResidual;
  j["trend"] = trendName(r.trend);
  j["complement_exact"] = r.complementExact;
  if (!r.directRadii.empty()) {
    Json direct = Json::array();
    for (std::size_t i = 0; i < r.directRadii.size(); ++i) {
      Json d = complexJson(r.directDifferences[i], digits);
      d["radius"] = r.directRadii[i];
      direct.push_back(std::move(d));
    }
    j["direct"] = direct;
  }
  if (r.altTarget) {
    Json alt = complexJson(*r.altTarget, digits);
    alt["short"] = shortComplex(*r.altTarget);
    j["alt_target"] = alt;
    j["alt_final_residual"] = r.altFinalResidual ? Json(*r.altFinalResidual) : Json(nullptr);
  }
  j["errors"] = r.errors;
  j["status"] = pass ? "pass" : "fail";
  return j;
}

std::string radialText(const RadialProbeResult& r) {
  std::ostringstream os;
  os << r.caseId << " at zeta = " << r.root.toString() << "\n";
  char buf[160];
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "  t = %-22.17g D = %-44s |D - target| = %.3e\n", r.radii[i],
                  r.differences[i].toString(16).c_str(), r.residuals[i]);
    os << buf;
  }
  for (const auto& e : r.errors) os << "  error: " << e << "\n";
  os << "target " << shortComplex(r.target) << "\n";
  std::snprintf(buf, sizeof buf, "final residual %.3e, trend %s%s\n", r.finalResidual, trendName(r.trend),
                r.complementExact ? "" : " (complement agrees with mock - theta only in the limit)");
  os << buf;
  if (r.altTarget) {
    std::snprintf(buf, sizeof buf, "alternative companion: target %s, final residual %.3e\n",
                  shortComplex(*r.altTarget).c_str(), r.altFinalResidual.value_or(NAN));
    os << buf;
  }
  return os.str();
}

Json conjectureJson(const ConjectureDef& c, const std::vector<ConjectureRow>& rows, long maxK, mpfr_prec_t bits) {
  int digits = digitsFor(bits);
  Json j;
  j["label"] = "CONJECTURE";
  j["id"] = "conj-" + c.id;
  j["ref"] = c.ref;
  j["max_k"] = maxK;
  j["precision_bits"] = bits;
  j["tolerance"] = conjectureTolerance(bits);
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : rows) {
    Json row;
    row["root_order"] = r.rootOrder;
    row["root_index"] = r.rootIndex;
    row["lhs"] = complexJson(r.lhs, digits);
    row["rhs"] = complexJson(r.rhs, digits);
    row["residual"] = r.residual;
    row["agree"] = r.agree;
    all = all && r.agree;
    arr.push_back(std::move(row));
  }
  j["rows"] = arr;
  // agreement is numerical evidence only
  j["consistent"] = all;
  return j;
}

std::string conjectureText(const ConjectureDef& c, const std::vector<ConjectureRow>& rows, mpfr_prec_t bits) {
  std::ostringstream os;
  os << "CONJECTURE conj-" << c.id << " (" << c.ref << "), tolerance " << conjectureTolerance(bits) << "\n";
  char buf[200];
  bool all = true;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "  zeta = exp(2 pi i %ld/%ld)  lhs %-40s rhs %-40s residual %.3e  %s\n", r.rootIndex,
                  r.rootOrder, r.lhs.toString(12).c_str(), r.rhs.toString(12).c_str(), r.residual,
                  r.agree ? "agree" : "DISAGREE");
    os << buf;
    all = all && r.agree;
  }
  os << (all ? "consistent with the conjecture at every root tried (not a proof)\n"
             : "numerical disagreement found\n");
  return os.str();
}

Json listJson(const std::vector<ListEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries) arr.push_back({{"id", e.id}, {"kind", e.kind}, {"ref", e.ref}, {"detail", e.detail}});
  return arr;
}

std::string listText(const std::vector<ListEntry>& entries) {
  std::ostringstream os;
  for (const auto& e : entries) os << pad(e.id, 18) << pad(e.kind, 11) << pad(e.ref, 42) << "  " << e.detail << "\n";
  return os.str();
}

namespace {

std::vector<std::pair<Exponent, Gaussian>> rows(const Series& s) {
  std::vector<std::pair<Exponent, Gaussian>> out;
  Exponent step(1, s.denomHint());
  Exponent lo = 0;
  if (auto v = s.valuation(); v && *v < lo) lo = *v;
  // an exact series has no order; stop after its last term
  Exponent hi = s.order() ? *s.order() : (s.maxExponent() ? *s.maxExponent() + step : Exponent(1));
  for (Exponent e = lo; e < hi; e += step) out.emplace_back(e, s.coefficient(e));
  return out;
}

}  // namespace

Json seriesJson(const std::string& label, const Series& s) {
  Json j;
  j["series"] = label;
  j["order"] = s.order() ? exponentJson(*s.order()) : Json(nullptr);
  Json arr = Json::array();
  for (const auto& [e, c] : rows(s)) arr.push_back({{"exponent", exponentJson(e)}, {"coefficient", c.toString()}});
  j["coefficients"] = arr;
  return j;
}

std::string seriesText(const std::string& label, const Series& s) {
  std::ostringstream os;
  os << label;
  if (s.order()) os << " + O(q^" << *s.order() << ")";
  os << "\n";
  for (const auto& [e, c] : rows(s)) os << "  q^" << pad(e.toString(), 6) << c << "\n";
  return os.str();
}

}  // namespace qmock::report
