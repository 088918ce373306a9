#pragma once

#include "gk/arith.hpp"
#include "gk/groups.hpp"
#include "gk/sporadic.hpp"
#include "gk/adjacency.hpp"
#include "gk/torus_oracle.hpp"
#include "gk/independence.hpp"
#include "gk/refdata.hpp"
#include "gk/output.hpp"
