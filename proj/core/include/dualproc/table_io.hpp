#pragma once

#include <string>

#include "dualproc/lookup_table.hpp"

namespace dualproc {

// JSON snapshot of a lookup table: nested maps keyed by state index and
// action name. Full float precision; parsing the text back yields a table
// that compares equal to the original.
std::string table_to_json_text(const LookupTable& table);
LookupTable table_from_json_text(const std::string& text);

}  // namespace dualproc
