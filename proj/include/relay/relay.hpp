#pragma once

// Umbrella header for the whole library.

#include "relay/agents.hpp"
#include "relay/avoidance.hpp"
#include "relay/config.hpp"
#include "relay/controller.hpp"
#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/golden_section.hpp"
#include "relay/qgamma.hpp"
#include "relay/scenarios.hpp"
#include "relay/simulator.hpp"
#include "relay/svg.hpp"
#include "relay/trace_io.hpp"
#include "relay/world.hpp"
