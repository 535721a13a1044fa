#pragma once

#include "sumprod/constructions.hpp"
#include "sumprod/error.hpp"
#include "sumprod/extremal.hpp"
#include "sumprod/fp_core.hpp"
#include "sumprod/fp_set.hpp"
#include "sumprod/spectra.hpp"
