#pragma once

#include <cstdint>

#include "bogrape/mip/model.hpp"

namespace bogrape::mip {

inline constexpr std::uint64_t kDefaultCountCap = std::uint64_t{1} << 24;

/// True iff every bound, integrality restriction, linear row, link and the
/// variance row hold. Rows with integral data are checked in integer
/// arithmetic. Throws MissingVariable on unassigned (NaN) entries.
bool check_feasible(const MipModel& model, const Assignment& values);

/// Name of the first violated restriction, or empty when feasible.
std::string first_violation(const MipModel& model, const Assignment& values);

/// Counts integer points of a purely discrete model by depth-first search
/// in declaration order; a row is tested as soon as its last variable is
/// fixed. Throws SpaceTooLarge once more than `cap` search nodes have been
/// visited, and InvalidArgument if the model has continuous variables.
std::uint64_t count_feasible(const MipModel& model, std::uint64_t cap = kDefaultCountCap);

}  // namespace bogrape::mip
