#include "harmtree/functionals.hpp"

namespace harmtree {

std::string to_string(FunctionalName name) {
  switch (name) {
    case FunctionalName::G: return "G";
    case FunctionalName::F: return "F";
    case FunctionalName::W_d: return "W_d";
    case FunctionalName::W_2: return "W_2";
    case FunctionalName::almgren_N: return "Almgren_N";
    case FunctionalName::energy: return "energy";
  }
  return "unknown";
}

}  // namespace harmtree

namespace harmtree::detail {

namespace {

mpz_ptr raw(Integer& x) { return x.backend().data(); }
mpz_srcptr raw(const Integer& x) { return x.backend().data(); }

}  // namespace

void PowerAccumulator::add_parts(mpz_srcptr num, mpz_srcptr den, const Integer* m) {
  mpz_pow_ui(raw(term_), num, e_);
  mpz_abs(raw(term_), raw(term_));
  if (m) mpz_mul(raw(term_), raw(term_), raw(*m));
  // Consecutive terms nearly always share a denominator; skip the map lookup then.
  if (last_ == by_denominator_.end() || mpz_cmp(raw(last_->first), den) != 0) {
    Integer key;
    mpz_set(raw(key), den);
    last_ = by_denominator_.try_emplace(std::move(key), Integer(0)).first;
  }
  mpz_add(raw(last_->second), raw(last_->second), raw(term_));
}

void PowerAccumulator::add(const Rational& x, const Integer* m) {
  mpq_srcptr q = x.backend().data();
  add_parts(mpq_numref(q), mpq_denref(q), m);
}

void PowerAccumulator::add_difference(const Rational& a, const Rational& b, const Integer* m) {
  mpq_srcptr qa = a.backend().data();
  mpq_srcptr qb = b.backend().data();
  if (mpz_cmp(mpq_denref(qa), mpq_denref(qb)) == 0) {
    // Same denominator: the unreduced numerator difference is enough.
    mpz_sub(raw(diff_), mpq_numref(qa), mpq_numref(qb));
    add_parts(raw(diff_), mpq_denref(qa), m);
    return;
  }
  add(Rational(a - b), m);
}

Rational PowerAccumulator::total() const {
  Rational sum(0);
  for (const auto& [den, num] : by_denominator_) {
    sum += Rational(num) / Rational(ipow(den, e_));
  }
  return sum;
}

}  // namespace harmtree::detail
