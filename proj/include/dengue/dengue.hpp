#pragma once

#include "dengue/csv.hpp"
#include "dengue/eigenvalues.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/errors.hpp"
#include "dengue/integrator.hpp"
#include "dengue/jacobian.hpp"
#include "dengue/model.hpp"
#include "dengue/report.hpp"
#include "dengue/reproduction.hpp"
#include "dengue/scenario.hpp"
#include "dengue/stability.hpp"
#include "dengue/svg.hpp"
#include "dengue/threshold.hpp"
