#pragma once

#include "altquad/analysis.hpp"
#include "altquad/csv.hpp"
#include "altquad/errors.hpp"
#include "altquad/extrapolation.hpp"
#include "altquad/grid.hpp"
#include "altquad/rules.hpp"
