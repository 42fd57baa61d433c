#pragma once

#include "pdc/constants.hpp"
#include "pdc/dressed.hpp"
#include "pdc/emit.hpp"
#include "pdc/errors.hpp"
#include "pdc/gain.hpp"
#include "pdc/presets.hpp"
#include "pdc/propagation.hpp"
#include "pdc/scenario.hpp"
#include "pdc/sweep.hpp"
