#pragma once

#include "ragg/aggregators.hpp"
#include "ragg/catalog.hpp"
#include "ragg/error.hpp"
#include "ragg/gaussian.hpp"
#include "ragg/guarantees.hpp"
#include "ragg/info_core.hpp"
#include "ragg/info_structure.hpp"
#include "ragg/instance_io.hpp"
#include "ragg/revelation.hpp"
#include "ragg/rng.hpp"
#include "ragg/scalar_search.hpp"
#include "ragg/substitutes.hpp"
