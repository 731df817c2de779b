#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "crawford/error.hpp"

namespace crawford {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Nearest double to q. Scales before dividing so huge numerators and
/// denominators do not overflow to inf/inf.
inline double to_double(const Rational& q) {
  using boost::multiprecision::msb;
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  long shift = 0;
  const long nb = static_cast<long>(msb(num));
  const long db = static_cast<long>(msb(den));
  // Keep ~64 significant bits in the quotient.
  const long excess = nb - db - 64;
  if (excess > 0) {
    den <<= static_cast<unsigned>(excess);
  } else if (excess < 0) {
    num <<= static_cast<unsigned>(-excess);
  }
  shift = excess;
  Integer quotient = num / den;
  double r = std::ldexp(quotient.convert_to<double>(), static_cast<int>(shift));
  return negative ? -r : r;
}

/// Element of Q[i]. Both parts are kept reduced with positive denominators
/// by the underlying rational type.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(long long real) : re(real) {}

  static GaussianRational parse(std::string_view text);
  std::string str() const;

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_gaussian_integer() const {
    return boost::multiprecision::denominator(re) == 1 && boost::multiprecision::denominator(im) == 1;
  }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm_squared() const { return re * re + im * im; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational d = b.norm_squared();
    if (d == 0) throw InvalidArgument("division by zero Gaussian rational");
    GaussianRational q = a * b.conj();
    q.re /= d;
    q.im /= d;
    return q;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

namespace detail {

// Unsigned rational literal: "12", "3/4", "1.25". Empty means 1 (as in "i" or "-i").
inline Rational parse_magnitude(std::string_view s, std::string_view whole) {
  auto fail = [&] { throw ParseError("malformed Gaussian rational '" + std::string(whole) + "'"); };
  if (s.empty()) return Rational(1);
  auto digits = [&](std::string_view d) {
    if (d.empty()) fail();
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    return Integer(std::string(d));
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = digits(s.substr(0, slash));
    Integer den = digits(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail();
    Integer num = ip.empty() ? Integer(0) : digits(ip);
    Integer scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    if (!fp.empty()) num = num * scale + digits(fp);
    return Rational(num, scale);
  }
  return Rational(digits(s));
}

} // namespace detail

/// Grammar: up to one real term and one imaginary term, each an optionally
/// signed rational ("a", "a/b" or a terminating decimal), the imaginary term
/// suffixed by 'i'. Whitespace is ignored. Examples: "2", "-4i", "3+i",
/// "1/2-2/3i".
inline GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty Gaussian rational");

  GaussianRational out;
  bool seen_re = false, seen_im = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    pos = end;

    bool negative = false;
    if (term.front() == '+' || term.front() == '-') {
      negative = term.front() == '-';
      term.remove_prefix(1);
    }
    const bool imaginary = !term.empty() && term.back() == 'i';
    if (imaginary) term.remove_suffix(1);
    if (!imaginary && term.empty()) throw ParseError("malformed Gaussian rational '" + std::string(text) + "'");
    Rational v = detail::parse_magnitude(term, text);
    if (negative) v = -v;
    if (imaginary) {
      if (seen_im) throw ParseError("two imaginary parts in '" + std::string(text) + "'");
      seen_im = true;
      out.im = v;
    } else {
      if (seen_re) throw ParseError("two real parts in '" + std::string(text) + "'");
      seen_re = true;
      out.re = v;
    }
  }
  return out;
}

inline std::string GaussianRational::str() const {
  if (im == 0) return re.str();
  std::string imag;
  const Rational mag = abs(im);
  imag = mag == 1 ? std::string("i") : mag.str() + "i";
  if (re == 0) return im < 0 ? "-" + imag : imag;
  return re.str() + (im < 0 ? "-" : "+") + imag;
}

} // namespace crawford
