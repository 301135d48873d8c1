#pragma once

#include <string>

#include "arvex/decomposition.hpp"
#include "arvex/dilation.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

// UTF-8 JSON formats. A tuple document is
//   {"field":"real"|"complex","g":G,"rows":R,"cols":C,"matrices":[M_1,..,M_G]}
// with each M a row-major array of arrays and complex entries as [re,im]
// pairs. Pencil documents are square tuples with "kind":"pencil". Trace and
// decomposition documents extend the tuple format with their own fields.
// Serialization round-trips doubles bit-exactly; parse errors throw
// InputError.

std::string tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const std::string& text);

std::string pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const std::string& text);

std::string trace_to_json(const DilationTrace& t);
DilationTrace trace_from_json(const std::string& text);

std::string decomposition_to_json(const ExtremeDecomposition& d);
ExtremeDecomposition decomposition_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace arvex
