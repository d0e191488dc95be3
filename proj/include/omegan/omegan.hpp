#pragma once

#include "omegan/error.hpp"
#include "omegan/formula.hpp"
#include "omegan/io.hpp"
#include "omegan/modal.hpp"
#include "omegan/oracle.hpp"
#include "omegan/partition.hpp"
#include "omegan/random.hpp"
#include "omegan/refiner.hpp"
#include "omegan/region.hpp"
#include "omegan/svg.hpp"
