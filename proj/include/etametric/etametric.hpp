#pragma once

#include "axioms.hpp"
#include "classify.hpp"
#include "cone.hpp"
#include "errors.hpp"
#include "fixed_point.hpp"
#include "fixtures.hpp"
#include "sampling.hpp"
#include "serialize.hpp"
#include "spaces.hpp"
#include "table_io.hpp"
#include "topology.hpp"
#include "vec.hpp"
