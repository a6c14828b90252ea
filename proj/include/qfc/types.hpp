#ifndef QFC_TYPES_HPP
#define QFC_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace qfc {

using Complex = std::complex<double>;

// Thrown when a solver produces non-finite values or a run fails numerically
// (as opposed to invalid_argument, which signals bad inputs/configuration).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qfc

#endif
