#pragma once

#include "bps/energy.hpp"
#include "bps/fields.hpp"
#include "bps/flow.hpp"
#include "bps/io.hpp"
#include "bps/lift.hpp"
#include "bps/potential.hpp"
#include "bps/radial.hpp"
#include "bps/residual.hpp"
#include "bps/topology.hpp"
