#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dcled/field.hpp"

namespace dcled {

/// One quadratic monomial alpha * x_i * x_j. Positions are 1-based and the
/// pair is ordered as written: (1,2) and (2,1) are distinct stored terms.
struct QuadTerm {
    std::uint32_t i = 0, j = 0;
    Fe alpha;
    friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

struct LinTerm {
    std::uint32_t k = 0;
    Fe beta;
    friend bool operator==(const LinTerm&, const LinTerm&) = default;
};

/// f(x_1..x_n) = sum alpha_ij x_i x_j + sum beta_k x_k + gamma, with one
/// label per input position. Canonical form (after normalize): quad sorted
/// by (i,j) with unique keys, lin sorted by k with unique keys.
struct QuadraticProgram {
    std::vector<std::string> labels;
    std::vector<QuadTerm> quad;
    std::vector<LinTerm> lin;
    Fe gamma;
    friend bool operator==(const QuadraticProgram&, const QuadraticProgram&) = default;
};

/// f(x_1..x_d) = x_1 * ... * x_d over d distinct labels.
struct MonomialProgram {
    std::vector<std::string> labels;
    friend bool operator==(const MonomialProgram&, const MonomialProgram&) = default;
};

using Program = std::variant<QuadraticProgram, MonomialProgram>;

/// Sorts terms and aggregates duplicate (i,j) / k keys. Zero coefficients
/// produced by aggregation are kept; callers see exactly what they wrote.
void normalize(const Field& f, QuadraticProgram& p);

/// Throws std::invalid_argument unless the program is canonical: distinct
/// labels, indices in [1, n], sorted unique term keys, canonical coefficients.
void validate(const Field& f, const QuadraticProgram& p);
void validate(const Field& f, const MonomialProgram& p);

/// True when the program has no quadratic terms (server 1 stays idle).
inline bool is_linear(const QuadraticProgram& p) { return p.quad.empty(); }

Fe eval_plain(const Field& f, const QuadraticProgram& p, std::span<const Fe> values);
Fe eval_plain(const Field& f, const MonomialProgram& p, std::span<const Fe> values);

/// The labeled identity program L_tau(x) = x.
QuadraticProgram identity_program(std::string label);

/// Substitutes inner[k] for the k-th input of outer and expands. Duplicate
/// labels across inner programs merge into one input position (first
/// occurrence wins the ordering). Throws std::invalid_argument when the
/// expanded degree would exceed 2 (terms with zero coefficient are skipped).
QuadraticProgram compose(const Field& f, const QuadraticProgram& outer,
                         const std::vector<QuadraticProgram>& inner);

/// Canonical binary encoding: a kind byte, big-endian u32 counts/indices,
/// length-prefixed labels, fixed-width field elements. Term order is the
/// canonical sorted order, so equal programs serialize identically.
std::vector<std::uint8_t> serialize(const Field& f, const QuadraticProgram& p);
std::vector<std::uint8_t> serialize(const Field& f, const MonomialProgram& p);
std::vector<std::uint8_t> serialize(const Field& f, const Program& p);
/// Strict inverse; rejects non-canonical or trailing bytes.
Program parse_program(const Field& f, std::span<const std::uint8_t> bytes);

/// Text form used by program files:
///   kind quadratic|monomial   (optional, default quadratic)
///   label <name>              (one per input position, in order)
///   quad <i> <j> <coeff>
///   lin <k> <coeff>
///   const <coeff>
/// Coefficients are decimal or 0x-hex, optionally negated, reduced mod p.
/// '#' starts a comment.
Program parse_program_text(const Field& f, std::istream& in);
std::string to_program_text(const Field& f, const Program& p);

}  // namespace dcled
