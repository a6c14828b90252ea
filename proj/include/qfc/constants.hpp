#ifndef QFC_CONSTANTS_HPP
#define QFC_CONSTANTS_HPP

namespace qfc {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double boltzmann = 1.380649e-23;            // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

// The medium modelled throughout is a cold 87Rb vapor.
inline constexpr double rb87_mass = 86.909180531 * atomic_mass_unit; // kg

} // namespace qfc

#endif
