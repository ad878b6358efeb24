#pragma once

// Physical constants (2019 SI exact values where defined, CODATA otherwise).

namespace qcost {

inline constexpr double k_boltzmann = 1.380649e-23;       // J/K (exact)
inline constexpr double hbar = 1.054571817e-34;           // J*s
inline constexpr double elementary_charge = 1.602176634e-19;  // C (exact)
inline constexpr double bohr_magneton = 9.2740100783e-24;     // J/T

// Mass of a single 9Be+ ion, the default trapped species.
inline constexpr double beryllium9_ion_mass = 1.496e-26;  // kg

}  // namespace qcost
