#include "arrmax/rational.hpp"

#include <cctype>

namespace arrmax {

Rat rat(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

int sign(const Rat& q) { return sgn(q); }

std::optional<Rat> parse_rat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rat q(mpz_class(std::string(num), 10), d);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = neg ? "-0" : "0";
    if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '+' || frac[0] == '-')
      return std::nullopt;
    mpz_class w(std::string(whole), 10), f(std::string(frac), 10);
    mpz_class den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num = abs(w) * den + f;
    Rat q(neg || w < 0 ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }
  if (!is_int(s)) return std::nullopt;
  return Rat(mpz_class(std::string(s), 10));
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double approx(const Rat& q) { return q.get_d(); }

}  // namespace arrmax
