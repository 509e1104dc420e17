#pragma once

#include "glue/formula.hpp"
#include "lexer.hpp"

namespace glue::detail {

Formula parse_formula(TokenStream& in, const Signature& signature, FormulaSyntax syntax);

}  // namespace glue::detail
