#pragma once

#include <string>

#include "exmine/weak/rules.hpp"

namespace exmine {

// Canonical grouping key: lowercase, surrounding punctuation stripped; NAME
// kind additionally reduces dotted identifiers to their last segment
// ("java.lang.TypeNotPresentException" -> "typenotpresentexception").
// Idempotent. Throws ValidationError when nothing is left after stripping.
std::string normalize_exception(const std::string& surface, ExceptionClass kind);

}  // namespace exmine
