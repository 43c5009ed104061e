#pragma once

namespace gpb {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kMu0 = 1.25663706212e-6;            // H/m
inline constexpr double kEps0 = 8.8541878128e-12;           // F/m
inline constexpr double kEta0 = 376.730313668;              // Ohm, free-space impedance
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kCopperConductivity = 5.8e7;        // S/m

// The design frequency and the wavelength it implies. The tables in the
// source material round the wavelength to 230 mm; derived dimensions such
// as lambda/64 = 3.6 mm come from the rounded value, so both are exposed.
inline constexpr double kDesignFrequencyHz = 1.3e9;
inline constexpr double kDesignWavelengthMm = 230.609;      // c / 1.3 GHz
inline constexpr double kTableWavelengthMm = 230.0;         // rounded, table-compat

// ABS dielectric measured at 30% infill (recorded only; the solver is PEC).
inline constexpr double kAbsRelPermittivity = 1.7;
inline constexpr double kAbsLossTangent = 1.8e-2;

}  // namespace gpb
