#pragma once

#include "gstar/bounds_oracle.hpp"
#include "gstar/color_set.hpp"
#include "gstar/coloring_lp.hpp"
#include "gstar/constructions.hpp"
#include "gstar/errors.hpp"
#include "gstar/grid.hpp"
#include "gstar/lp.hpp"
#include "gstar/profile.hpp"
#include "gstar/rational.hpp"
#include "gstar/search.hpp"
