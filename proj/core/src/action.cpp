#include <cyclebv/action.hpp>

namespace cyclebv {

void GradedAction::validate(const SuperBasis& basis) const {
  for (const auto& [key, element] : components) {
    if (key.g < 0 || key.i < 1 || key.n < 1)
      throw std::invalid_argument("action key out of range");
    if (key.g == 0 && key.i == 1 && (key.n == 1 || key.n == 2))
      throw std::invalid_argument(
          "the components at (0,1,1) and (0,1,2) must vanish");
    if (element.flavor() != flavor)
      throw std::invalid_argument("action component flavor mismatch");
    for (const auto& [mono, coeff] : element.terms()) {
      if (static_cast<int>(mono.cycles.size()) != key.i)
        throw std::invalid_argument("monomial cycle count differs from i");
      int letters = 0;
      for (const auto& c : mono.cycles) letters += c.length();
      if (letters != key.n)
        throw std::invalid_argument("monomial letter count differs from n");
      if (monomial_parity(mono, basis, flavor) != 0)
        throw std::invalid_argument("action monomials must be even");
    }
  }
}

BVElement GradedAction::assembled(const SuperBasis& basis, int h_min,
                                  int h_max, int coupling_cutoff) const {
  BVElement out(flavor);
  for (const auto& [key, element] : components) {
    for (const auto& [mono, coeff] : element.terms()) {
      CouplingSeries c =
          coeff.restricted(h_min - key.h_weight(), h_max - key.h_weight(),
                           coupling_cutoff)
              .shifted_by_h(key.h_weight());
      out.add_term(mono, c);
    }
  }
  (void)basis;
  return out;
}

BVElement shift_h(const BVElement& e, int k) {
  BVElement out(e.flavor());
  for (const auto& [mono, coeff] : e.terms())
    out.add_term(mono, coeff.shifted_by_h(k));
  return out;
}

BVElement qme_residual(const GradedAction& S, const SuperBasis& basis,
                       const PairingForm& form, int order) {
  S.validate(basis);
  // Window generous enough that the final restriction is exact: D and the
  // bracket never raise the h-exponent, and the shift adds one.
  BVElement assembled = S.assembled(basis, -order - 2, order + 2);
  BVElement d = shift_h(second_order_operator(assembled, basis, form), 1);
  BVElement br =
      bv_bracket(assembled, assembled, basis, form).scaled(Rational(1, 2));
  BVElement sum = d + br;
  BVElement out(S.flavor);
  for (const auto& [mono, coeff] : sum.terms())
    out.add_term(mono, coeff.restricted(-order, order, -1));
  return out;
}

}  // namespace cyclebv
