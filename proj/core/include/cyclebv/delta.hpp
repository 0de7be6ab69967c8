#pragma once
// The odd second-order operator on cycle monomials and the bracket it
// generates.
//
// On a monomial the operator is a sum of two kinds of surgeries:
//  - join: pick letters p, q on two different cycles; both letters are
//    consumed by the contraction coefficient b(p, q) and the two cycles fuse
//    into one (the arc after p, then the arc after q).  For the even-pairing
//    flavor one of the two cycle markers is consumed as well.
//  - split: pick an ordered pair of letters p, q on the same cycle, at
//    cyclic distance >= 2 on both sides; the letters are consumed by b(p, q)
//    and the cycle falls apart into the arc after q and the arc after p.
//    For the even-pairing flavor the second output cycle receives a fresh
//    marker.
// Every sign is produced by one call to the sign engine on the flattened
// symbol list (markers + letters), plus — for even-pairing splits — the
// Koszul factor for placing the fresh marker.
//
// The operator squares to zero; the join and split parts are graded by the
// cycle count, so J^2 = 0, J*Sp + Sp*J = 0 and Sp^2 = 0 hold separately.

#include <cyclebv/cyclic.hpp>

#include <vector>

namespace cyclebv {

struct SurgeryTerm {
  CycleMonomial mono;  // canonical
  Rational coeff;
};

// All join+split terms of one monomial.  `contraction` must come from
// contraction_coefficients(basis, form) for the matching flavor.
std::vector<SurgeryTerm> second_order_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor);

// Restrictions to the join part (cycle count decreases) and the split part
// (cycle count increases); their sum is second_order_terms.
std::vector<SurgeryTerm> join_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor);
std::vector<SurgeryTerm> split_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor);

namespace detail {
enum class SurgeryPart { Join, Split, Both };
std::vector<SurgeryTerm> surgery_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor,
    SurgeryPart part);
}  // namespace detail

template <class K>
BVElementT<K> apply_surgery(const BVElementT<K>& e, const SuperBasis& basis,
                            const PairingForm& form,
                            detail::SurgeryPart part) {
  if ((form.parity == FormParity::Even) != (e.flavor() == FormParity::Even))
    throw std::invalid_argument("element flavor does not match pairing");
  const auto b = contraction_coefficients(basis, form);
  BVElementT<K> out(e.flavor());
  for (const auto& [mono, coeff] : e.terms()) {
    for (const auto& term :
         detail::surgery_terms(mono, basis, b, e.flavor(), part)) {
      out.add_term(term.mono, K(coeff * term.coeff));
    }
  }
  return out;
}

// The full odd second-order operator.
template <class K>
BVElementT<K> second_order_operator(const BVElementT<K>& e,
                                    const SuperBasis& basis,
                                    const PairingForm& form) {
  return apply_surgery(e, basis, form, detail::SurgeryPart::Both);
}

// The bracket as the deviation of the operator from being a derivation:
//   {a, b} = D(a b) - D(a) b - (-1)^{|a|} a D(b),
// extended bilinearly from homogeneous terms.
template <class K>
BVElementT<K> bv_bracket(const BVElementT<K>& a, const BVElementT<K>& b,
                         const SuperBasis& basis, const PairingForm& form) {
  BVElementT<K> out(a.flavor());
  for (const auto& [ma, ca] : a.terms()) {
    BVElementT<K> ea(a.flavor());
    ea.add_term(ma, ca);
    const int pa = monomial_parity(ma, basis, a.flavor());
    for (const auto& [mb, cb] : b.terms()) {
      BVElementT<K> eb(b.flavor());
      eb.add_term(mb, cb);
      BVElementT<K> d_ab =
          second_order_operator(ea.multiply(eb, basis), basis, form);
      BVElementT<K> da_b =
          second_order_operator(ea, basis, form).multiply(eb, basis);
      BVElementT<K> a_db =
          ea.multiply(second_order_operator(eb, basis, form), basis);
      BVElementT<K> term = d_ab - da_b;
      if (pa == 0)
        term = term - a_db;
      else
        term = term + a_db;
      out = out + term;
    }
  }
  return out;
}

}  // namespace cyclebv
