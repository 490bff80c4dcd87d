#pragma once

#include "paramsynth/ratfunc/polynomial.h"

namespace paramsynth {

// Greatest common divisor over Q[V], normalized to trailing coefficient 1.
// Recursive content / primitive-part Euclid with respect to the largest variable id.
Polynomial gcd(Polynomial const& a, Polynomial const& b);

// Content with respect to var: gcd of the coefficients in Q[V \ {var}].
Polynomial content(Polynomial const& a, VariableId var);
Polynomial primitivePart(Polynomial const& a, VariableId var);

// Sparse pseudo-remainder of a by b with respect to var.
Polynomial pseudoRemainder(Polynomial const& a, Polynomial const& b, VariableId var);

}  // namespace paramsynth
