#include "harmtree/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace harmtree {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::invalid_address: return "invalid-address";
    case ErrorKind::root_has_no_parent: return "root-has-no-parent";
    case ErrorKind::no_edge_at_root: return "no-edge-at-root";
    case ErrorKind::splitter_violates_sum: return "splitter-violates-sum";
    case ErrorKind::class_not_in_table: return "class-not-in-table";
    case ErrorKind::representation_unsupported: return "representation-unsupported";
    case ErrorKind::wrong_degree: return "wrong-degree";
    case ErrorKind::depth_insufficient: return "depth-insufficient";
    case ErrorKind::nonintegral_p_in_exact_mode: return "nonintegral-p-in-exact-mode";
    case ErrorKind::unsupported_p: return "unsupported-p";
    case ErrorKind::family_model_mismatch: return "family-model-mismatch";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Leading zeros would otherwise select octal in the GMP string constructor.
Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorKind::parse_error, "not a rational: '" + std::string(whole) + "'");
  }
  const Integer value = decimal_integer(s);
  return negative ? Integer(-value) : value;
}

Integer pow10(unsigned long n) { return ipow(Integer(10), n); }

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw Error(ErrorKind::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // Decimal: [sign] digits [. digits] [e [sign] digits]
  std::string_view mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    exponent = static_cast<long>(parse_integer(s.substr(e + 1), text).convert_to<long>());
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const auto whole = mantissa.substr(0, dot);
    const auto frac = mantissa.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw Error(ErrorKind::parse_error, "not a rational: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) {
      throw Error(ErrorKind::parse_error, "not a rational: '" + std::string(text) + "'");
    }
    digits = std::string(mantissa);
  }
  Rational value{decimal_integer(digits)};
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string to_decimal(const Rational& value, int significant) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Rational a = negative ? Rational(-value) : value;
  const Integer num = boost::multiprecision::numerator(a);
  const Integer den = boost::multiprecision::denominator(a);

  // e = floor(log10(a)), starting from the digit-count estimate.
  long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  auto ten_pow = [](long n) {
    return n >= 0 ? Rational(pow10(static_cast<unsigned long>(n)))
                  : Rational(Integer(1), pow10(static_cast<unsigned long>(-n)));
  };
  while (ten_pow(e) > a) --e;
  while (ten_pow(e + 1) <= a) ++e;

  const Rational scaled = a * ten_pow(significant - 1 - e);
  Integer q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  const Rational rest = scaled - Rational(q);
  const Rational half(1, 2);
  if (rest > half || (rest == half && (q % 2) != 0)) ++q;
  if (q == pow10(static_cast<unsigned long>(significant))) {
    q = pow10(static_cast<unsigned long>(significant - 1));
    ++e;
  }

  std::string digits = q.str();
  std::string out = negative ? "-" : "";
  if (e < -4 || e >= significant) {
    std::string frac = digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += digits.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += (e < 0 ? "e-" : "e+");
    const std::string exp_digits = std::to_string(std::labs(e));
    out += (exp_digits.size() < 2 ? "0" : "") + exp_digits;
    return out;
  }
  std::string int_part;
  std::string frac_part;
  if (e >= 0) {
    int_part = digits.substr(0, static_cast<std::size_t>(e + 1));
    frac_part = digits.substr(static_cast<std::size_t>(e + 1));
  } else {
    int_part = "0";
    frac_part = std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
  }
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

Rational to_rational(const Real& value) {
  const auto* src = value.backend().data();
  if (!mpfr_number_p(src)) throw Error(ErrorKind::parse_error, "non-finite float value");
  Integer mantissa;
  const mpfr_exp_t exp = mpfr_get_z_2exp(mantissa.backend().data(), src);
  Rational result(mantissa);
  if (exp > 0) result *= Rational(ipow(Integer(2), static_cast<unsigned long>(exp)));
  if (exp < 0) result /= Rational(ipow(Integer(2), static_cast<unsigned long>(-exp)));
  return result;
}

std::string to_decimal(const Real& value, int significant) {
  return to_decimal(to_rational(value), significant);
}

bool is_integer(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

unsigned long integral_exponent(const Rational& p) {
  if (!is_integer(p) || p < 0) {
    throw Error(ErrorKind::nonintegral_p_in_exact_mode,
                "exponent " + to_string(p) + " needs float mode");
  }
  return boost::multiprecision::numerator(p).convert_to<unsigned long>();
}

std::uint64_t stable_hash(const Rational& value) {
  // FNV-1a over the canonical text form.
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : to_string(value)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * std::log10(2.0)));
  Real::default_precision(digits10 < 2 ? 2 : digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

}  // namespace harmtree
