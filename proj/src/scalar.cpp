#include "btp/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace btp {

std::string to_string(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const GQ& z) {
  if (z.is_real()) return to_string(z.re);
  std::string imag;
  if (z.im == 1) {
    imag = "i";
  } else if (z.im == -1) {
    imag = "-i";
  } else {
    imag = to_string(z.im) + "i";
  }
  if (sgn(z.re) == 0) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return to_string(z.re) + imag;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Q parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw ScalarParseError("empty rational");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string body = text.substr(pos);
  std::string num_text = body;
  std::string den_text = "1";
  if (auto slash = body.find('/'); slash != std::string::npos) {
    num_text = body.substr(0, slash);
    den_text = body.substr(slash + 1);
  }
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ScalarParseError("malformed rational '" + raw + "'");
  }
  mpz_class num(num_text, 10);
  mpz_class den(den_text, 10);
  if (den == 0) throw ScalarParseError("zero denominator in '" + raw + "'");
  Q q(num, den);
  q.canonicalize();
  return negative ? Q(-q) : q;
}

GQ parse_gaussian(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw ScalarParseError("empty scalar");
  if (text.back() != 'i') return GQ(parse_rational(text));
  std::string body = text.substr(0, text.size() - 1);
  // The split between real and imaginary parts is the last sign past position 0.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string real_text = split == std::string::npos ? "" : body.substr(0, split);
  std::string imag_text = split == std::string::npos ? body : body.substr(split);
  Q imag;
  if (imag_text.empty() || imag_text == "+") {
    imag = 1;
  } else if (imag_text == "-") {
    imag = -1;
  } else {
    imag = parse_rational(imag_text);
  }
  Q real = real_text.empty() ? Q(0) : parse_rational(real_text);
  return GQ(real, imag);
}

}  // namespace btp
