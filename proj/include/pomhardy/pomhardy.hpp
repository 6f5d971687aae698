#pragma once

// Umbrella header: numerical verification of averaging-operator weight
// conditions for monotone functions on discrete partially ordered measure
// spaces.

#include "pomhardy/conditions.hpp"
#include "pomhardy/config.hpp"
#include "pomhardy/core.hpp"
#include "pomhardy/hardy.hpp"
#include "pomhardy/monotone.hpp"
#include "pomhardy/quadrature.hpp"
#include "pomhardy/report.hpp"
#include "pomhardy/space.hpp"
#include "pomhardy/validate.hpp"
#include "pomhardy/verify.hpp"
#include "pomhardy/weight.hpp"
