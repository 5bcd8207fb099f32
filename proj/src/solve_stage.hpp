// Copyright 2026 The rampmatch Authors
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

#ifndef RAMPMATCH_SRC_SOLVE_STAGE_HPP_
#define RAMPMATCH_SRC_SOLVE_STAGE_HPP_

#include "rampmatch/pipeline.hpp"

namespace rampmatch::internal {

// Builds and solves one program over `scope` and folds its statistics
// into `info`.
FractionalAssignment solve_stage(const Instance& inst,
                                 const Hyperparameters& hp,
                                 const ProgramScope& scope,
                                 const SolveRequest& request, SolveInfo& info);

}  // namespace rampmatch::internal

#endif  // RAMPMATCH_SRC_SOLVE_STAGE_HPP_
