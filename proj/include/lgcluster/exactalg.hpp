#pragma once

// Exact Laurent polynomial / rational function arithmetic and evaluation over
// a prime field.

#include "lgcluster/checked.hpp"
#include "lgcluster/errors.hpp"
#include "lgcluster/laurent_poly.hpp"
#include "lgcluster/modp.hpp"
#include "lgcluster/monomial.hpp"
#include "lgcluster/rat_func.hpp"
