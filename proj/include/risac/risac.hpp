#pragma once

// Umbrella header: RIS-assisted sensing/communication beamforming
// workbench.  Everything lives in namespace risac and is header-only.

#include "risac/beamforming.hpp"
#include "risac/channel.hpp"
#include "risac/errors.hpp"
#include "risac/experiment.hpp"
#include "risac/gain_max.hpp"
#include "risac/linalg.hpp"
#include "risac/report.hpp"
#include "risac/rng.hpp"
#include "risac/scenario.hpp"
#include "risac/sre.hpp"
#include "risac/version.hpp"
