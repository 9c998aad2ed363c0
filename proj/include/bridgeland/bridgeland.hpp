#pragma once

#include "rational.hpp"
#include "lattice.hpp"
#include "mukai.hpp"
#include "central_charge.hpp"
#include "walls.hpp"
#include "fm.hpp"
#include "star.hpp"
#include "laurent.hpp"
#include "wallcross.hpp"
