#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace bridgeland {

using Z = mpz_class;
using Q = mpq_class;

// user-facing problems (bad input, violated preconditions)
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// something that must hold by construction did not
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline Q make_q(long p, long q = 1) {
  Q x(p, q);
  x.canonicalize();
  return x;
}

inline bool is_int(const Q& x) { return x.get_den() == 1; }

inline Z floor_q(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline Z ceil_q(const Q& x) {
  Z r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline int sgn(const Q& x) { return ::sgn(x); }

inline Q abs_q(const Q& x) { return x < 0 ? Q(-x) : x; }

// an integer >= sqrt(x) for x >= 0 (not necessarily tight)
inline Z sqrt_ceil_bound(const Q& x) {
  if (x <= 0) return 0;
  Z f = ceil_q(x);
  Z s;
  mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
  if (s * s < f) s += 1;
  return s;
}

inline Z gcd_z(const Z& a, const Z& b) {
  Z g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Z lcm_z(const Z& a, const Z& b) {
  Z l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// non-negative generator of aZ + bZ inside Q
inline Q gcd_q(const Q& a, const Q& b) {
  Z den = lcm_z(a.get_den(), b.get_den());
  Z na = Q(a * den).get_num();
  Z nb = Q(b * den).get_num();
  Q g(gcd_z(na, nb), den);
  g.canonicalize();
  return g;
}

inline std::string to_str(const Q& x) {
  if (is_int(x)) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// accepts "p", "-p", "p/q"; anything with a decimal point or exponent is refused
inline Q parse_q(const std::string& s) {
  auto digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    throw UserError("not an exact rational: \"" + s + "\" (use p or p/q)");
  if (num[0] == '+') num = num.substr(1);
  Z d(den);
  if (d == 0) throw UserError("zero denominator in \"" + s + "\"");
  Q x(Z(num), d);
  x.canonicalize();
  return x;
}

inline std::strong_ordering cmp(const Q& a, const Q& b) {
  int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace bridgeland
