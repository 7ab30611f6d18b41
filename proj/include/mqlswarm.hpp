#pragma once

#include "mqlswarm/core.hpp"
#include "mqlswarm/random.hpp"
#include "mqlswarm/qlearning.hpp"
#include "mqlswarm/trace.hpp"
#include "mqlswarm/pso.hpp"
#include "mqlswarm/mql.hpp"
#include "mqlswarm/metrics.hpp"
#include "mqlswarm/config.hpp"
#include "mqlswarm/experiment.hpp"
#include "mqlswarm/io.hpp"
