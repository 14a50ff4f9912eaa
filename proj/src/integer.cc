#include "nilmult/integer.hpp"

#include <stdexcept>

namespace nilmult {

Integer floor_div(const Integer& a, const Integer& b)
{
  if (b == 0)
    throw std::domain_error("floor_div: division by zero");
  Integer q = a / b;  // truncates toward zero
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0)))
    --q;
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b)
{
  Integer m = abs(b);
  Integer r = a % m;
  if (r < 0)
    r += m;
  return r;
}

Integer ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
  Integer old_r = a, r = b;
  Integer old_s = 1, cur_s = 0;
  Integer old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

Integer abs(const Integer& a)
{
  return a < 0 ? Integer(-a) : a;
}

std::string to_string(const Integer& a)
{
  return a.str();
}

}  // namespace nilmult
