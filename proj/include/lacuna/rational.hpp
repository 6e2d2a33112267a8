#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "lacuna/error.hpp"

namespace lacuna {

/// Exact arbitrary-precision fraction, the universal number type of the core.
/// GMP's canonicalizing rational; every value stored here is in lowest terms
/// with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) fail(Err::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) fail(Err::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" (optionally signed). Rejects anything else.
inline Rational parse_rational(std::string_view s) {
  auto digits_ok = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den))
    fail(Err::InvalidArgument, "malformed rational '" + std::string(s) + "'");
  Integer p(std::string(num), 10), q(std::string(den), 10);
  if (q == 0) fail(Err::InvalidArgument, "zero denominator in '" + std::string(s) + "'");
  return rat(p, q);
}

/// Canonical rendering: "p/q", or plain "p" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer floor_int(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_int(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Rational pow_rat(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;  // powers of a canonical fraction are canonical
}

/// 2^e for any integer e (negative exponents give dyadic fractions).
inline Rational pow2_rat(long e) {
  Rational r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
  return r;
}

inline Rational abs_rat(const Rational& r) { return r >= 0 ? r : Rational(-r); }

/// Smallest a with 2^a >= m^64, i.e. a = ceil(64*log2(m)).
/// Exact: a/64 >= log2(m) > a/64 - 1/64.
inline long ceil_64log2(const Integer& m) {
  if (m <= 0) fail(Err::InvalidArgument, "log2 of non-positive value");
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), m.get_mpz_t(), 64);
  auto bits = mpz_sizeinbase(p.get_mpz_t(), 2);  // floor(log2 p) + 1
  bool pow2 = mpz_scan1(p.get_mpz_t(), 0) == bits - 1;
  return static_cast<long>(pow2 ? bits - 1 : bits);
}

/// Rational upper bracket r for log2(m): log2(m) <= r <= log2(m) + 1/64,
/// with equality r = log2(m) exactly when m is a power of two.
inline Rational log2_upper(const Integer& m) { return rat(Integer(ceil_64log2(m)), Integer(64)); }

}  // namespace lacuna
