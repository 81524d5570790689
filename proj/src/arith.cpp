#include "siegel/arith.hpp"

#include <cctype>
#include <stdexcept>

namespace siegel {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_integer(std::string_view s) {
  if (!is_integer_literal(s))
    throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return Int(text, 10);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text));
  Int num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-')
    throw std::invalid_argument("denominator must be positive in '" + std::string(text) + "'");
  Int den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Int& value) { return value.get_str(); }

Int floor_of(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int ceil_of(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int floor_sqrt(const Rat& x) {
  if (x < 0) throw std::domain_error("floor_sqrt of a negative value");
  // floor(sqrt(x)) == isqrt(floor(x)) for real x >= 0.
  Int f = floor_of(x);
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

Int lcm_of(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  if (k > n) return Int(0);
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rat pow_of(const Rat& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return pow_of(Rat(1) / base, -exponent);
  }
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    if (k == 0) break;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace siegel
