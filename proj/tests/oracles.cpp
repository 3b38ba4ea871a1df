#include "oracles.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

void mulFactor(Poly& p, const Factor& f) {
  const int N = static_cast<int>(p.size());
  for (int i = N - 1; i >= 0; --i)
    for (auto [e, c] : f)
      if (i - e >= 0) p[i] += c * p[i - e];
}

void divFactor(Poly& p, const Factor& f) {
  const int N = static_cast<int>(p.size());
  for (int i = 0; i < N; ++i)
    for (auto [e, c] : f)
      if (i - e >= 0) p[i] -= c * p[i - e];
}

namespace {

Factor onePlus(int e) { return {{e, 1}}; }
Factor oneMinus(int e) { return {{e, -1}}; }

struct Def {
  int start;
  std::function<long(long)> exponent;  // of the monomial in front
  std::function<int(long)> sign;
  std::function<void(Poly&, long)> products;  // multiplies in the q-products of term n
};

int plus(long) { return 1; }
int alt(long n) { return n % 2 ? -1 : 1; }

const std::map<std::string, Def>& defs() {
  static const std::map<std::string, Def> d = {
      {"f3", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) { divFactor(p, onePlus(j)); divFactor(p, onePlus(j)); }
       }}},
      {"phi3", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, onePlus(2 * j));
       }}},
      {"chi3", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, {{j, -1}, {2 * j, 1}});
       }}},
      {"psi3", {1, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"nu3", {0, [](long n) { return n * (n + 1); }, plus, [](Poly& p, long n) {
         for (int j = 0; j <= n; ++j) divFactor(p, onePlus(2 * j + 1));
       }}},
      {"f0", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, onePlus(j));
       }}},
      {"f1", {0, [](long n) { return n * n + n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, onePlus(j));
       }}},
      {"F0", {0, [](long n) { return 2 * n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"F1", {0, [](long n) { return 2 * n * n + 2 * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n + 1; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"phi0", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(2 * j - 1));
       }}},
      {"phi1", {0, [](long n) { return (n + 1) * (n + 1); }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(2 * j - 1));
       }}},
      {"psi0", {0, [](long n) { return (n + 1) * (n + 2) / 2; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(j));
       }}},
      {"psi1", {0, [](long n) { return n * (n + 1) / 2; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(j));
       }}},
      {"chi0", {0, [](long n) { return n; }, plus, [](Poly& p, long n) {
         for (long j = n + 1; j <= 2 * n; ++j) divFactor(p, oneMinus(static_cast<int>(j)));
       }}},
      {"chi1", {0, [](long n) { return n; }, plus, [](Poly& p, long n) {
         for (long j = n + 1; j <= 2 * n + 1; ++j) divFactor(p, oneMinus(static_cast<int>(j)));
       }}},
      {"phi6", {0, [](long n) { return n * n; }, alt, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, oneMinus(2 * j - 1));
         for (int j = 1; j <= 2 * n; ++j) divFactor(p, onePlus(j));
       }}},
      {"psi6", {0, [](long n) { return (n + 1) * (n + 1); }, alt, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, oneMinus(2 * j - 1));
         for (int j = 1; j <= 2 * n + 1; ++j) divFactor(p, onePlus(j));
       }}},
      {"rho6", {0, [](long n) { return n * (n + 1) / 2; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(j));
         for (int j = 1; j <= n + 1; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"sigma6", {0, [](long n) { return (n + 1) * (n + 2) / 2; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(j));
         for (int j = 1; j <= n + 1; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"lambda6", {0, [](long n) { return n; }, alt, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, oneMinus(2 * j - 1));
         for (int j = 1; j <= n; ++j) divFactor(p, onePlus(j));
       }}},
      {"mu6", {0, [](long) { return 0L; }, alt, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, oneMinus(2 * j - 1));
         for (int j = 1; j <= n; ++j) divFactor(p, onePlus(j));
       }}},
      {"phi6minus", {1, [](long n) { return n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= 2 * n - 1; ++j) mulFactor(p, onePlus(j));
         for (int j = 1; j <= n; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"psi6minus", {1, [](long n) { return n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= 2 * n - 2; ++j) mulFactor(p, onePlus(j));
         for (int j = 1; j <= n; ++j) divFactor(p, oneMinus(2 * j - 1));
       }}},
      {"S0", {0, [](long n) { return n * n; }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) { mulFactor(p, onePlus(2 * j - 1)); divFactor(p, onePlus(2 * j)); }
       }}},
      {"S1", {0, [](long n) { return n * (n + 2); }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) { mulFactor(p, onePlus(2 * j - 1)); divFactor(p, onePlus(2 * j)); }
       }}},
      {"T0", {0, [](long n) { return (n + 1) * (n + 2); }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(2 * j));
         for (int j = 1; j <= n + 1; ++j) divFactor(p, onePlus(2 * j - 1));
       }}},
      {"T1", {0, [](long n) { return n * (n + 1); }, plus, [](Poly& p, long n) {
         for (int j = 1; j <= n; ++j) mulFactor(p, onePlus(2 * j));
         for (int j = 1; j <= n + 1; ++j) divFactor(p, onePlus(2 * j - 1));
       }}},
  };
  return d;
}

Poly term(const Def& d, long n, int N) {
  Poly p(N);
  long e = d.exponent(n);
  if (e >= N) return p;
  p[e] = d.sign(n);
  d.products(p, n);
  return p;
}

void addTo(Poly& acc, const Poly& t) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
}

}  // namespace

bool hasMockTheta(const std::string& id) { return defs().count(id) > 0; }

Poly mockTheta(const std::string& id, int N) {
  auto it = defs().find(id);
  if (it == defs().end()) throw std::invalid_argument("no oracle for " + id);
  const Def& d = it->second;
  Poly acc(N);
  if (id == "mu6") {
    // terms never shrink: average the limits of even and odd partial sums
    long M = N + 4;
    Poly even(N), odd(N), prevEven;
    for (long n = 0; n <= 2 * M + 1; ++n) {
      addTo(acc, term(d, n, N));
      if (n == 2 * M - 2) prevEven = acc;
      if (n == 2 * M) even = acc;
      if (n == 2 * M + 1) odd = acc;
    }
    if (prevEven != even) throw std::logic_error("mu6 oracle: even partial sums not stable");
    for (int i = 0; i < N; ++i) acc[i] = (even[i] + odd[i]) / 2;
    return acc;
  }
  for (long n = d.start; d.exponent(n) < N; ++n) addTo(acc, term(d, n, N));
  return acc;
}

std::vector<long> partitions(int N) {
  // p(n, m): partitions of n into parts <= m
  std::vector<std::vector<long>> p(N, std::vector<long>(N + 1, 0));
  for (int n = 0; n < N; ++n)
    for (int m = 0; m <= N; ++m) {
      if (n == 0) { p[n][m] = 1; continue; }
      if (m == 0) continue;
      p[n][m] = p[n][m - 1] + (n - m >= 0 ? p[n - m][std::min(m, n - m)] : 0);
    }
  std::vector<long> out(N);
  for (int n = 0; n < N; ++n) out[n] = p[n][n];
  return out;
}

std::vector<long> eulerProduct(int N) {
  std::vector<long> c(N, 0);
  for (long k = -N; k <= N; ++k) {
    long e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < N) c[e] += (k % 2 == 0) ? 1 : -1;
  }
  return c;
}

namespace {
bool tiny(const mpq_class& t, int bits) {
  mpq_class bound(1);
  bound /= mpz_class(1) << bits;
  return abs(t) < bound;
}
}  // namespace

mpq_class f3At(const mpq_class& q, int bits) {
  mpq_class sum = 0, den = 1;
  for (long n = 0;; ++n) {
    if (n > 0) {
      mpq_class f = 1 + [&] { mpq_class r = 1; for (long j = 0; j < n; ++j) r *= q; return r; }();
      den *= f * f;
    }
    mpq_class num = 1;
    for (long j = 0; j < n * n; ++j) num *= q;
    mpq_class t = num / den;
    sum += t;
    if (n > 0 && tiny(t, bits + 8)) return sum;
  }
}

mpq_class eulerAt(const mpq_class& q, int bits) {
  mpq_class sum = 0;
  auto pw = [&](long e) { mpq_class r = 1; for (long j = 0; j < e; ++j) r *= q; return r; };
  for (long k = 0;; ++k) {
    mpq_class s = k % 2 ? -1 : 1;
    mpq_class t = s * pw(k * (3 * k - 1) / 2);
    if (k > 0) t += s * pw(k * (3 * k + 1) / 2);
    sum += t;
    if (k > 0 && tiny(t, bits + 8)) return sum;
  }
}

}  // namespace oracle
