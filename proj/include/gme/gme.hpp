#pragma once

#include "gme/csv.hpp"
#include "gme/domain.hpp"
#include "gme/family_analytic.hpp"
#include "gme/linalg.hpp"
#include "gme/mixed_hull.hpp"
#include "gme/negativity.hpp"
#include "gme/pure_gme.hpp"
#include "gme/states.hpp"
#include "gme/surface.hpp"
