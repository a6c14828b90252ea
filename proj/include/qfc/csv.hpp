#ifndef QFC_CSV_HPP
#define QFC_CSV_HPP

#include <string>

namespace qfc {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

} // namespace qfc

#endif
