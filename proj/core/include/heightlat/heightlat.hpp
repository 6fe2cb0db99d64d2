#pragma once

#include "heightlat/conversions.hpp"
#include "heightlat/domain.hpp"
#include "heightlat/error.hpp"
#include "heightlat/height_function.hpp"
#include "heightlat/level_sets.hpp"
#include "heightlat/oracle.hpp"
#include "heightlat/pair_transforms.hpp"
#include "heightlat/random.hpp"
#include "heightlat/rational.hpp"
#include "heightlat/sampler.hpp"
#include "heightlat/serialization.hpp"
#include "heightlat/statistics.hpp"
#include "heightlat/trifurcation.hpp"
#include "heightlat/vertex.hpp"
#include "heightlat/version.hpp"
