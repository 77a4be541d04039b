// Sequential-counter cardinality constraints in CNF.

#pragma once

#include <span>

#include "qsms/sat.hpp"

namespace qsms {

/// At most k of `lits` are true. Introduces fresh counter variables.
void cardinality_le(std::span<const sat::Lit> lits, int k, sat::Solver& sink);
/// At least k of `lits` are true.
void cardinality_ge(std::span<const sat::Lit> lits, int k, sat::Solver& sink);
/// Exactly k of `lits` are true.
void cardinality_eq(std::span<const sat::Lit> lits, int k, sat::Solver& sink);

}  // namespace qsms
