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

#ifndef RAMPMATCH_LP_FORMAT_HPP_
#define RAMPMATCH_LP_FORMAT_HPP_

// Writer for the CPLEX LP text format (Maximize / Subject To / Bounds / End).
// Numbers are printed in shortest round-trip form, so a conforming reader
// recovers every coefficient exactly.

#include <string>

#include "rampmatch/linear_program.hpp"

namespace rampmatch {

// Throws Error if the program still carries concave terms.
std::string export_lp_text(const LinearProgram& lp);

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace rampmatch

#endif  // RAMPMATCH_LP_FORMAT_HPP_
