#pragma once

#include "mlb/distribution.hpp"
#include "mlb/error.hpp"
#include "mlb/gst.hpp"
#include "mlb/implicit_step.hpp"
#include "mlb/maxwellian.hpp"
#include "mlb/mixture.hpp"
#include "mlb/moment_dynamics.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"
#include "mlb/tridiagonal.hpp"
#include "mlb/velocity_grid.hpp"
