// Umbrella header for the whole library.

#pragma once

#include "matrix.hpp"
#include "states.hpp"
#include "channels.hpp"
#include "protocol.hpp"
#include "analysis.hpp"
#include "sweep.hpp"
#include "cli.hpp"
