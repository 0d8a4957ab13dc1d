// Copyright 2026 The RegretForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Umbrella header for the library. The harness (streams, experiment
// configs, CSV, CLI) lives under regretforge/harness/ and is not included.

#include "regretforge/add_combiner.hpp"
#include "regretforge/coin_bettor.hpp"
#include "regretforge/concentration.hpp"
#include "regretforge/constrained.hpp"
#include "regretforge/dimfree.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/hints.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/ledger.hpp"
#include "regretforge/multi_hint.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/parallel.hpp"
#include "regretforge/per_coordinate.hpp"
#include "regretforge/projected_descent.hpp"
#include "regretforge/self_hinted.hpp"
#include "regretforge/vector.hpp"
