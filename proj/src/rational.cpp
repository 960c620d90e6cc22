#include "ainf/rational.hpp"

#include "ainf/error.hpp"

#include <cctype>

namespace ainf {

Scalar parse_scalar(const std::string& text) {
  // cpp_rational's own parser accepts "p/q" but aborts the process on q == 0 and
  // tolerates some junk; validate shape first.
  auto is_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_int(num, true) || !is_int(den, false))
    fail(ErrorKind::Malformed, "bad rational literal: '" + text + "'");
  boost::multiprecision::cpp_int n(num), d(den);
  if (d == 0) fail(ErrorKind::Malformed, "zero denominator in '" + text + "'");
  return Scalar(n, d);
}

std::string format_scalar(const Scalar& x) { return x.str(); }

} // namespace ainf
