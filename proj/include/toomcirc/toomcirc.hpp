#pragma once

// Umbrella header.

#include "arith.hpp"
#include "builder.hpp"
#include "costmodel.hpp"
#include "multipliers.hpp"
#include "netlist.hpp"
#include "pebble.hpp"
#include "qasm.hpp"
#include "sim.hpp"
