#pragma once

#include "vsp/time.hpp"
#include "vsp/errors.hpp"
#include "vsp/instance.hpp"
#include "vsp/validate.hpp"
#include "vsp/objective.hpp"
#include "vsp/io.hpp"
#include "vsp/heuristics/sort_key.hpp"
#include "vsp/heuristics/slot.hpp"
#include "vsp/heuristics/event_queue.hpp"
#include "vsp/heuristics/dispatch.hpp"
#include "vsp/exact/difference_constraints.hpp"
#include "vsp/exact/branch_and_bound.hpp"
#include "vsp/exact/mip.hpp"
#include "vsp/exact/lp_format.hpp"
#include "vsp/instances/grid.hpp"
#include "vsp/instances/jsp.hpp"
#include "vsp/bench/sweep.hpp"
