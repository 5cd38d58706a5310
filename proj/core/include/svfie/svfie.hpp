#pragma once

#include "svfie/analysis.hpp"
#include "svfie/basis.hpp"
#include "svfie/error.hpp"
#include "svfie/operational.hpp"
#include "svfie/problems.hpp"
#include "svfie/quadrature.hpp"
#include "svfie/resolution.hpp"
#include "svfie/solver.hpp"
#include "svfie/stochastic.hpp"
