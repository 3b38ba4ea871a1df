#include "qmock/gaussian.hpp"

#include <cctype>

#include "qmock/error.hpp"

namespace qmock {

Gaussian::Gaussian(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Gaussian Gaussian::fraction(long num, long den) {
  mpq_class v(num, den);
  v.canonicalize();
  return Gaussian(v);
}

bool Gaussian::isInteger() const {
  return sgn(im_) == 0 && re_.get_den() == 1;
}

Gaussian Gaussian::inverse() const {
  if (isZero()) throw Error(ErrorKind::ZeroSeries, "division by zero coefficient");
  if (sgn(im_) == 0) return Gaussian(mpq_class(1) / re_);
  mpq_class n = norm();
  return Gaussian(re_ / n, -im_ / n);
}

Gaussian Gaussian::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  // roots of unity of order 4 show up constantly; reduce the exponent
  if (sgn(im_) == 0 && (re_ == 1 || re_ == -1)) {
    return (re_ == -1 && (e & 1)) ? Gaussian(-1) : Gaussian(1);
  }
  if (sgn(re_) == 0 && (im_ == 1 || im_ == -1)) {
    Gaussian r(1);
    for (std::int64_t k = 0; k < e % 4; ++k) r *= *this;
    return r;
  }
  Gaussian result(1), base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

void Gaussian::addProduct(const Gaussian& a, const Gaussian& b) {
  bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
  if (ar && br) {
    re_ += a.re_ * b.re_;
  } else if (ar) {
    re_ += a.re_ * b.re_;
    im_ += a.re_ * b.im_;
  } else if (br) {
    re_ += a.re_ * b.re_;
    im_ += a.im_ * b.re_;
  } else {
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
  }
}

void Gaussian::subProduct(const Gaussian& a, const Gaussian& b) {
  bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
  if (ar && br) {
    re_ -= a.re_ * b.re_;
  } else if (ar) {
    re_ -= a.re_ * b.re_;
    im_ -= a.re_ * b.im_;
  } else if (br) {
    re_ -= a.re_ * b.re_;
    im_ -= a.im_ * b.re_;
  } else {
    re_ -= a.re_ * b.re_ - a.im_ * b.im_;
    im_ -= a.re_ * b.im_ + a.im_ * b.re_;
  }
}

std::string Gaussian::toString() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imPart;
  if (im_ == 1) imPart = "i";
  else if (im_ == -1) imPart = "-i";
  else imPart = im_.get_str() + "i";
  if (sgn(re_) == 0) return imPart;
  if (imPart[0] == '-') return re_.get_str() + imPart;
  return re_.get_str() + "+" + imPart;
}

namespace {

mpq_class parseRational(const std::string& s) {
  if (s.empty() || s == "+") return mpq_class(1);
  if (s[0] == '+') return parseRational(s.substr(1));
  if (s == "-") return mpq_class(-1);
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw Error(ErrorKind::SyntaxError, "bad rational '" + s + "'");
  v.canonicalize();
  return v;
}

std::optional<mpq_class> rationalSqrt(const mpq_class& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn = sqrt(n), rd = sqrt(d);
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

Gaussian Gaussian::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty number");
  if (s.back() != 'i') return Gaussian(parseRational(s));
  // split "a+bi" at the last sign that is not leading
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return Gaussian(mpq_class(0), parseRational(body));
  return Gaussian(parseRational(body.substr(0, split)), parseRational(body.substr(split)));
}

std::optional<Gaussian> Gaussian::exactSqrt(const Gaussian& z) {
  if (z.isZero()) return Gaussian(0);
  if (sgn(z.im_) == 0) {
    if (sgn(z.re_) > 0) {
      if (auto r = rationalSqrt(z.re_)) return Gaussian(*r);
      return std::nullopt;
    }
    if (auto r = rationalSqrt(-z.re_)) return Gaussian(mpq_class(0), *r);
    return std::nullopt;
  }
  // (c+di)^2 = a+bi  =>  c^2 = (a+|z|)/2, d = b/(2c)
  auto modulus = rationalSqrt(z.norm());
  if (!modulus) return std::nullopt;
  mpq_class c2 = (z.re_ + *modulus) / 2;
  auto c = rationalSqrt(c2);
  if (!c || sgn(*c) == 0) return std::nullopt;
  return Gaussian(*c, z.im_ / (2 * *c));
}

}  // namespace qmock
