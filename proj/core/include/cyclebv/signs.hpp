#pragma once
// The sign engine.
//
// There is exactly one implementation of the Koszul sign rule in this
// library: koszul_reorder_sign.  Every sign that appears anywhere — cyclic
// rotations, reordering of cycles, extraction of symbols by a second-order
// operator, flattening of tensor factors, Wick pairings — is computed by
// building the appropriate reordering and calling it.
//
// A reordering of a list of graded symbols is described by `src`: the target
// list has, in slot j, the symbol that originally sat at position src[j].
// The sign is (-1)^k where k counts the pairs j < k with src[j] > src[k]
// whose two symbols are both odd (an inversion of two odd symbols).

#include <vector>

namespace cyclebv {

// parities[i] is the parity (0 or 1) of the symbol at ORIGINAL position i.
// src must be injective with values in [0, parities.size()); it may cover
// only a subset of the original positions (symbols that are consumed by a
// scalar pairing are simply listed first in the target order).
int koszul_reorder_sign(const std::vector<int>& src,
                        const std::vector<int>& parities);

// Convenience builders (all delegate to koszul_reorder_sign).

// Sign for rotating a cyclic block so that position k comes first:
// [0..n-1] -> [k..n-1, 0..k-1].
int rotation_sign(const std::vector<int>& parities, int k);

// Sign for swapping two adjacent blocks of the given parities.
int block_swap_sign(int left_parity, int right_parity);

}  // namespace cyclebv
