#pragma once

#include "glue/meaning.hpp"
#include "lexer.hpp"

namespace glue::detail {

SemType parse_type(TokenStream& in);
Term parse_term(TokenStream& in, const Signature& signature, const TypeEnv& variables,
                const std::optional<SemType>& expected = std::nullopt);

}  // namespace glue::detail
