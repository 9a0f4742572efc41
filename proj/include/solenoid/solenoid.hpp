#pragma once

// Wrapping rules on a wedge of circles, the pre-solenoid axioms as
// combinatorial checks, orientability, and the homology invariants of the
// associated one-dimensional solenoid, all in exact integer arithmetic.

#include "solenoid/abelian.hpp"
#include "solenoid/bigint.hpp"
#include "solenoid/germ.hpp"
#include "solenoid/homology.hpp"
#include "solenoid/json_io.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/normalform.hpp"
#include "solenoid/parse.hpp"
#include "solenoid/rule.hpp"
#include "solenoid/selfcheck.hpp"
#include "solenoid/validate.hpp"
