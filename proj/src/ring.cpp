#include "hodgehh/ring.hpp"

namespace hodgehh {

Budget& Budget::instance() {
  static Budget b;
  return b;
}

void Budget::reset() { used_.store(0); }

void Budget::set_limit_mb(long mb) {
  require(mb > 0, "budget must be positive");
  limit_mb_ = mb;
}

void Budget::charge(std::int64_t bytes, const char* what) {
  std::int64_t now = used_.fetch_add(bytes) + bytes;
  if (now > limit_mb_ * 1024LL * 1024LL) {
    used_.fetch_sub(bytes);  // failed charge must not poison later ones
    throw budget_error(cat("memory budget of ", limit_mb_, " MB exceeded while allocating ",
                           bytes, " bytes for ", what));
  }
}

Ring Ring::GF(unsigned long p) {
  require(p >= 2, "Fp modulus must be >= 2");
  for (unsigned long d = 2; d * d <= p; ++d)
    require(p % d != 0, cat("Fp modulus ", p, " is not prime"));
  return Ring{RingKind::Fp, p};
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Z: return "Z";
    case RingKind::Q: return "Q";
    case RingKind::Fp: return cat("F", p);
  }
  return "?";
}

mpq_class Ring::normalize(const mpq_class& x) const {
  mpq_class y = x;
  y.canonicalize();
  switch (kind) {
    case RingKind::Q:
      return y;
    case RingKind::Z:
      if (y.get_den() != 1)
        require(false, cat("scalar ", y.get_str(), " is not an integer over Z"));
      return y;
    case RingKind::Fp: {
      mpz_class den = y.get_den();
      mpz_class num = y.get_num();
      mpz_class pz(static_cast<unsigned long>(p));
      mpz_class deninv;
      int ok = mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      if (ok == 0)
        require(false, cat("denominator ", den.get_str(), " not invertible mod ", p));
      mpz_class r = (num * deninv) % pz;
      if (r < 0) r += pz;
      return mpq_class(r);
    }
  }
  return y;
}

bool Ring::is_zero(const mpq_class& x) const { return normalize(x) == 0; }

mpq_class Ring::inv(const mpq_class& x) const {
  switch (kind) {
    case RingKind::Q: {
      require(x != 0, "division by zero");
      return mpq_class(1) / x;
    }
    case RingKind::Fp: {
      mpq_class y = normalize(x);
      require(y != 0, "division by zero in Fp");
      mpz_class pz(static_cast<unsigned long>(p));
      mpz_class r;
      int ok = mpz_invert(r.get_mpz_t(), y.get_num().get_mpz_t(), pz.get_mpz_t());
      require(ok != 0, "non-invertible element in Fp");
      return mpq_class(r);
    }
    case RingKind::Z:
      if (!(x == 1 || x == -1))
        require(false, cat("non-unit ", x.get_str(), " cannot be inverted over Z"));
      return x;
  }
  return x;
}

Ring parse_ring(const std::string& s) {
  if (s == "Z") return Ring::ZZ();
  if (s == "Q") return Ring::QQ();
  std::string t = s;
  if (t.rfind("Fp:", 0) == 0) t = "F" + t.substr(3);
  if (t.size() >= 2 && t[0] == 'F') {
    unsigned long p = 0;
    for (size_t i = 1; i < t.size(); ++i) {
      require(t[i] >= '0' && t[i] <= '9', cat("bad ring spec '", s, "'"));
      p = p * 10 + static_cast<unsigned long>(t[i] - '0');
    }
    return Ring::GF(p);
  }
  throw validation_error(cat("bad ring spec '", s, "' (expected Z, Q, or F<p>)"));
}

std::string q_to_string(const mpq_class& x) {
  mpq_class y = x;
  y.canonicalize();
  return y.get_str();
}

mpq_class q_from_string(const std::string& s) {
  mpq_class x;
  require(x.set_str(s, 10) == 0, cat("bad rational literal '", s, "'"));
  x.canonicalize();
  return x;
}

}  // namespace hodgehh
