#pragma once

#include "fcuc/analysis.hpp"
#include "fcuc/freq.hpp"
#include "fcuc/io.hpp"
#include "fcuc/model.hpp"
#include "fcuc/optimizer/linear_model.hpp"
#include "fcuc/optimizer/simplex.hpp"
#include "fcuc/optimizer/solver.hpp"
#include "fcuc/pricing.hpp"
#include "fcuc/report.hpp"
#include "fcuc/uc.hpp"
