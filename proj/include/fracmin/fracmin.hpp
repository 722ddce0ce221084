#pragma once

#include "fracmin/circle_maps.hpp"
#include "fracmin/critical_exponent.hpp"
#include "fracmin/error.hpp"
#include "fracmin/gagliardo_energy.hpp"
#include "fracmin/inequality_lab.hpp"
#include "fracmin/map_io.hpp"
#include "fracmin/minimizer.hpp"
#include "fracmin/quadrature.hpp"
#include "fracmin/report.hpp"
#include "fracmin/special_functions.hpp"
#include "fracmin/summation.hpp"
