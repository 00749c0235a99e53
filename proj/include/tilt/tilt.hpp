#pragma once

#include "tilt/errors.hpp"
#include "tilt/exactlin.hpp"
#include "tilt/quiverrep.hpp"
#include "tilt/dercat.hpp"
#include "tilt/torspairs.hpp"
#include "tilt/hrs.hpp"
#include "tilt/report.hpp"
