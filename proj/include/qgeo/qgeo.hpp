#pragma once

#include "qgeo/carnot.hpp"
#include "qgeo/curvature.hpp"
#include "qgeo/distribution.hpp"
#include "qgeo/entropy.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/heisenberg.hpp"
#include "qgeo/maxent.hpp"
#include "qgeo/qalgebra.hpp"
