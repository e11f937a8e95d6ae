#pragma once

#include "hoi/entropy_source.hpp"
#include "hoi/subset_mask.hpp"

namespace hoi {

// O-information algebra. Every quantity is expanded into joint entropies of
// variable subsets and evaluated through the cache, so identities between
// quantities hold up to floating-point rounding only. All results in bits.
//
// Preconditions are checked; violations throw std::invalid_argument.

/// I(A; B) = H(A) + H(B) - H(A ∪ B) for disjoint A, B.
double mutual_information(const EntropyCache& cache, SubsetMask a, SubsetMask b);

/// I(A; B | C) = H(A ∪ C) + H(B ∪ C) - H(A ∪ B ∪ C) - H(C).
double conditional_mutual_information(const EntropyCache& cache, SubsetMask a, SubsetMask b,
                                      SubsetMask c);

/// TC = sum_i H(X_i) - H(system). Requires |system| >= 2.
double total_correlation(const EntropyCache& cache, SubsetMask system);

/// DTC = H(system) - sum_i [H(system) - H(system - i)]. Requires |system| >= 2.
double dual_total_correlation(const EntropyCache& cache, SubsetMask system);

/// Omega = (n - 2) H(system) + sum_i [H(X_i) - H(system - i)], equal to
/// TC - DTC. Positive values mean redundancy dominates, negative synergy.
/// Requires |system| >= 3.
double o_information(const EntropyCache& cache, SubsetMask system);

/// First-order gradient Omega(system) - Omega(system - i), evaluated as
///
///     (2 - n) I(X_i; rest) + sum_{k != i} I(X_i; system - {i, k})
///
/// which stays defined at |system| = 3. Requires i in system.
double gradient_first(const EntropyCache& cache, SubsetMask system, int i);

/// Second-order gradient of the pair (i, j): how much the joint inclusion
/// of i and j changes Omega beyond their separate inclusions.
///
///  - |system| >= 5: Omega(S) - Omega(S-i) - Omega(S-j) + Omega(S-ij)
///  - |system| == 4: gradient_first(S, i) - gradient_first(S - j, i)
///  - |system| == 3: interaction information (local_o_information)
///
/// The pair is canonicalized so (i, j) and (j, i) give bit-identical results.
double gradient_second(const EntropyCache& cache, SubsetMask system, int i, int j);

/// Arbitrary-order gradient by inclusion-exclusion over the subsets of gamma:
/// sum_{alpha ⊆ gamma} (-1)^|alpha| Omega(system - alpha).
/// Requires gamma ⊆ system and |system| - |gamma| >= 3.
double gradient_k(const EntropyCache& cache, SubsetMask system, SubsetMask gamma);

/// Interaction information I(X_i; X_j; rest) = I(X_i; X_j) - I(X_i; X_j | rest)
/// with rest = system - {i, j}. Requires |system| >= 3.
double local_o_information(const EntropyCache& cache, SubsetMask system, int i, int j);

/// TC(system) - TC(system - i) = I(X_i; system - i). Requires |system| >= 3.
double gradient_tc(const EntropyCache& cache, SubsetMask system, int i);

/// DTC(system) - DTC(system - i), as a sum of conditional mutual
/// informations over k != i. Requires |system| >= 3.
double gradient_dtc(const EntropyCache& cache, SubsetMask system, int i);

}  // namespace hoi
