#pragma once

// Umbrella header.
#include "rindler/channels.hpp"
#include "rindler/concurrence.hpp"
#include "rindler/csv.hpp"
#include "rindler/error.hpp"
#include "rindler/qmat.hpp"
#include "rindler/svg.hpp"
#include "rindler/sweep.hpp"
#include "rindler/unruh.hpp"
#include "rindler/xstate.hpp"
