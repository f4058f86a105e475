#pragma once

#include <cstdint>
#include <vector>

#include "neteffect/types.hpp"

namespace neteffect {

/// Sample a fraction of the labeled nodes without replacement. Non-stratified
/// draws floor(fraction * labeled), at least 1; stratified draws
/// floor(fraction * per-class count) from every class and requires that to be
/// at least 1 per class.
PriorSet sample_priors(const LabelSet& labels, double fraction, std::uint64_t seed,
                       bool stratified = false);

/// Stratified sampling with one fraction per class; used for imbalanced
/// (upsampled) prior experiments.
PriorSet sample_priors_per_class(const LabelSet& labels, const std::vector<double>& fractions,
                                 std::uint64_t seed);

/// Initial beliefs from the priors: one-hot rows for prior nodes, uniform 1/c
/// elsewhere; the centered form subtracts 1/c elementwise.
BeliefMatrix initial_beliefs(const PriorSet& priors, const LabelSet& labels, bool centered);

}  // namespace neteffect
