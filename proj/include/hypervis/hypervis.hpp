#pragma once

#include "hypervis/closedform.hpp"
#include "hypervis/errors.hpp"
#include "hypervis/hypgeom.hpp"
#include "hypervis/intersect.hpp"
#include "hypervis/parallel.hpp"
#include "hypervis/procsim.hpp"
#include "hypervis/record.hpp"
#include "hypervis/rng.hpp"
#include "hypervis/stats.hpp"
#include "hypervis/visibility.hpp"
#include "hypervis/harness/acceptance.hpp"
#include "hypervis/harness/config.hpp"
#include "hypervis/harness/emit.hpp"
#include "hypervis/harness/render.hpp"
#include "hypervis/harness/run.hpp"
