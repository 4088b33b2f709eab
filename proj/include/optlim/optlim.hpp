#pragma once

#include "optlim/error.hpp"
#include "optlim/numerics.hpp"
#include "optlim/diagram.hpp"
#include "optlim/builtin.hpp"
#include "optlim/potential.hpp"
#include "optlim/equations.hpp"
#include "optlim/solver.hpp"
#include "optlim/optimistic.hpp"
#include "optlim/correspondence.hpp"
#include "optlim/twistknot.hpp"
#include "optlim/report.hpp"
