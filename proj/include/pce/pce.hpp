// Copyright 2026 The pce-mincut Authors
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

#include "pce/encoding.hpp"
#include "pce/errors.hpp"
#include "pce/graph.hpp"
#include "pce/objective.hpp"
#include "pce/optimize.hpp"
#include "pce/oracles.hpp"
#include "pce/quantum.hpp"
#include "pce/random.hpp"
#include "pce/solver.hpp"

#include "pce/harness/metrics.hpp"
#include "pce/harness/plan.hpp"
#include "pce/harness/record.hpp"
#include "pce/harness/report.hpp"
