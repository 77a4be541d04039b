// Reading and writing the and/or subset of QCIR-G14.

#pragma once

#include <string>
#include <string_view>

#include "qsms/circuit.hpp"

namespace qsms {

/// Accepts "#QCIR-G14", then at most one free, exists and forall block in
/// that order (consecutive lines of one kind are merged), an output line and
/// and/or gate definitions. Throws ParseError with the offending line.
Qbf parse_qcir(std::string_view text);

/// Deterministic QCIR text: free, exists and forall lines (empty blocks are
/// omitted), the output line, and the gates of the output cone in
/// topological order named g1, g2, ...
std::string emit_qcir(const Qbf& q);

}  // namespace qsms
