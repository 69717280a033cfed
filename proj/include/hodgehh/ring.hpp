#pragma once
#include <gmpxx.h>

#include <string>

#include "hodgehh/util.hpp"

namespace hodgehh {

enum class RingKind { Z, Q, Fp };

// Ground ring tag. All scalars are carried as mpq_class; the tag decides what
// counts as a canonical representative and which operations are legal.
struct Ring {
  RingKind kind = RingKind::Z;
  unsigned long p = 0;  // modulus when kind == Fp

  static Ring ZZ() { return Ring{RingKind::Z, 0}; }
  static Ring QQ() { return Ring{RingKind::Q, 0}; }
  static Ring GF(unsigned long p);

  bool is_field() const { return kind != RingKind::Z; }
  std::string name() const;

  // Canonical representative: Z demands integrality, Q canonicalizes the
  // fraction, Fp lifts to 0..p-1 (inverting the denominator mod p).
  mpq_class normalize(const mpq_class& x) const;
  bool is_zero(const mpq_class& x) const;
  // multiplicative inverse; fields only, x must be a unit
  mpq_class inv(const mpq_class& x) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return normalize(a * b); }
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return normalize(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return normalize(a - b); }
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const Ring& o) const { return !(*this == o); }
};

Ring parse_ring(const std::string& s);  // "Z", "Q", "F5", "Fp:5"

std::string q_to_string(const mpq_class& x);
mpq_class q_from_string(const std::string& s);

}  // namespace hodgehh
