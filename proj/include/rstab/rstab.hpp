#pragma once

// Convenience header pulling in the whole library.

#include "rstab/errors.hpp"
#include "rstab/polynomial.hpp"
#include "rstab/lti.hpp"
#include "rstab/aircraft.hpp"
#include "rstab/model_file.hpp"
#include "rstab/mdelta.hpp"
#include "rstab/golden.hpp"
#include "rstab/criteria.hpp"
#include "rstab/analysis.hpp"
#include "rstab/report.hpp"
#include "rstab/plot.hpp"
#include "rstab/commands.hpp"
