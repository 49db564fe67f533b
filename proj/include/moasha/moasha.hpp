// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "moasha/bench.hpp"
#include "moasha/ecdf.hpp"
#include "moasha/errors.hpp"
#include "moasha/evaluation_log.hpp"
#include "moasha/experiment.hpp"
#include "moasha/hypervolume.hpp"
#include "moasha/metrics.hpp"
#include "moasha/pareto.hpp"
#include "moasha/rng.hpp"
#include "moasha/scalarize.hpp"
#include "moasha/scheduler.hpp"
#include "moasha/search_space.hpp"
#include "moasha/simulation.hpp"
#include "moasha/types.hpp"
