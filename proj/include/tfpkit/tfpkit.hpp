#pragma once

// Umbrella header.

#include "tfpkit/ar1.hpp"
#include "tfpkit/csv.hpp"
#include "tfpkit/diagnostics.hpp"
#include "tfpkit/errors.hpp"
#include "tfpkit/growth.hpp"
#include "tfpkit/linreg.hpp"
#include "tfpkit/pipeline.hpp"
#include "tfpkit/prob.hpp"
#include "tfpkit/production.hpp"
#include "tfpkit/report_io.hpp"
#include "tfpkit/series.hpp"
#include "tfpkit/synthetic.hpp"
#include "tfpkit/unit_root.hpp"
