#include "qvertex/scalar.hpp"

#include <sstream>

namespace qv {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.numerator() << "/" << r.denominator();
  return os.str();
}

std::string rat_short(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return rat_str(r);
}

std::int64_t floor_rat(const Rat& r) {
  std::int64_t n = r.numerator(), d = r.denominator();
  std::int64_t f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

std::int64_t rat_ticks(const Rat& r) {
  Rat t = r * Rat(kTick);
  if (t.denominator() != 1) throw std::domain_error("exponent " + rat_str(r) + " is finer than the tick grid");
  return t.numerator();
}

std::pair<Phase, int> Phase::split(const Rat& r) {
  std::int64_t f = floor_rat(r);
  Phase p;
  p.r_ = r - Rat(f);
  return {p, (f % 2 == 0) ? 1 : -1};
}

Scalar::Scalar(QRat v, const Rat& phase_exp) : v_(std::move(v)) {
  auto [p, s] = Phase::split(phase_exp);
  if (v_.is_zero()) return;
  ph_ = p;
  if (s < 0) v_ = -v_;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -r.v_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (ph_ != o.ph_)
    throw UnsupportedSum("sum of scalars with phases (-1)^" + rat_str(ph_.r()) + " and (-1)^" +
                         rat_str(o.ph_.r()));
  v_ += o.v_;
  if (v_.is_zero()) ph_ = Phase();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  v_ *= o.v_;
  if (!o.ph_.trivial()) {
    auto [p, s] = Phase::split(ph_.r() + o.ph_.r());
    ph_ = p;
    if (s < 0) v_ = -v_;
  }
  return *this;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::domain_error("inversion of zero");
  return Scalar(v_.inv(), -ph_.r());
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

std::string Scalar::str() const {
  return "(-1)^" + rat_str(ph_.r()) + " | " + v_.str();
}

Scalar phase_scalar(const Rat& r) { return Scalar(QRat(1), r); }

}  // namespace qv
