#pragma once

#include <string>
#include <variant>

#include "asymcyc/fredholm.hpp"
#include "asymcyc/growth.hpp"

namespace asymcyc::io {

/// Module spec JSON:
/// { "kind": "even"|"odd", "dim_plus": int, "dim_minus": int,
///   "D": [[ [re,im], ... ], ...], "algebra": {name: matrix},
///   "g": matrix?, "epsilon": float }
/// plus {"kind": "path", "A0": matrix, "A1": matrix} for raw self-adjoint paths.
struct PathSpec {
    fred::Mat A0, A1;
};
using ModuleSpec = std::variant<fred::EvenFredholmModule, fred::OddFredholmModule, PathSpec>;

ModuleSpec load_module(const std::string& json_text);
ModuleSpec load_module_file(const std::string& path);
std::string save_module(const fred::EvenFredholmModule& m);
std::string save_module(const fred::OddFredholmModule& m);

fred::Mat matrix_from_json_text(const std::string& json_text);

/// Bundled desk-scale modules, constructed in code:
///   "index1": H+ = C^2, H- = C^1, off-diagonal block (1,0)^t, p = Id
///   "index0": balanced antidiagonal block, p = Id
///   "random-commuting": seeded block-diagonal module with a commuting projection
///   "odd-conj": dim-2 odd module, g swaps the eigenbasis of D = diag(-1, 2)
///   "odd-commuting": odd module with [D, g] = 0
fred::EvenFredholmModule builtin_even(const std::string& name, std::uint64_t seed = 7);
fred::OddFredholmModule builtin_odd(const std::string& name);
/// "generic": diag(-1,2) -> diag(1,2)
PathSpec builtin_path(const std::string& name);

/// The idempotent matrix a builtin even module pairs with (named "p" in the
/// module's algebra table).
fred::Mat builtin_idempotent(const fred::EvenFredholmModule& m);

// growth profile JSON: {"label": string, "terms": [float...]} or
// {"kind":"factorial_ratio","label":...,"params":{"num":[atoms],"den":[atoms]}}
// with atom {"type":"factorial"|"power"|"linear"|"constant","a":...,"b":...}
growth::GrowthSequence load_growth_profile(const std::string& json_text, int max_index);

}  // namespace asymcyc::io
