#pragma once

// Umbrella header.

#include "hardylab/angle.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/golden.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/nonlocal.hpp"
#include "hardylab/optimize.hpp"
#include "hardylab/schmidt.hpp"
#include "hardylab/spinalg.hpp"
#include "hardylab/state.hpp"
