#pragma once

#include "census.hpp"
#include "core.hpp"
#include "duality.hpp"
#include "freecheck.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "planner.hpp"
#include "primes.hpp"
#include "search.hpp"
#include "widthengine.hpp"
