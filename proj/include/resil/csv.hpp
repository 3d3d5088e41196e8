#ifndef RESIL_CSV_HPP
#define RESIL_CSV_HPP

#include <istream>
#include <string>
#include <vector>

namespace resil::csv {

/// Reads one RFC-4180 record (handles quoting, CRLF); false at EOF.
bool read_record(std::istream& in, std::vector<std::string>& fields);

} // namespace resil::csv

#endif
