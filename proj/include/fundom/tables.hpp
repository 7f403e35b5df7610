#pragma once

#include "fundom/families.hpp"

#include <string>
#include <vector>

namespace fundom {

// One parsed generator-table entry. Entries that fail to parse or violate the
// family's defining system keep the reason; valid ones carry the coordinates.
struct TableEntry {
    std::string text;
    bool valid = false;
    std::string reason;
    GroupElement element;
};

// Parse a single entry:
//  - quaternion families: "2+(-1+w)i+2j+wk" with w the ring generator
//  - Bianchi / congruence over a ring: "[[1,-w],[0,1]]" (the matrix gamma)
//  - congruence over Z: "a b c d", the four integer entries of ghat
TableEntry parse_table_entry(const Family &fam, const std::string &line);

// Parse a whole table file: '#' starts a comment, blank lines are skipped.
std::vector<TableEntry> parse_table_file(const Family &fam, const std::string &path);

} // namespace fundom
