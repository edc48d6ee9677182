#pragma once

// Everything except serialize.hpp, which additionally needs nlohmann/json.

#include "lgcluster/clusterkit.hpp"
#include "lgcluster/comparison.hpp"
#include "lgcluster/exactalg.hpp"
#include "lgcluster/lgseed.hpp"
#include "lgcluster/repchar.hpp"
