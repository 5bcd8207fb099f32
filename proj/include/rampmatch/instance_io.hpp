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

#ifndef RAMPMATCH_INSTANCE_IO_HPP_
#define RAMPMATCH_INSTANCE_IO_HPP_

// JSON document format:
//
//   {"papers":     [{"id": str, "demand": int, "authors": [str]}],
//    "reviewers":  [{"id": str, "capacity": int, "region": str,
//                    "senior": bool, "coauthors": [str]}],
//    "similarity": [[paper_id, reviewer_id, float]],
//    "bids":       [[paper_id, reviewer_id, level]],
//    "conflicts":  [[paper_id, reviewer_id]]}
//
// "authors" may be omitted (unknown authorship). Bid levels are
// not_willing, not_entered, in_a_pinch, willing, eager.

#include <string>
#include <string_view>

#include "rampmatch/model.hpp"

namespace rampmatch {

// Throws Error on malformed documents, unknown ids and unknown bid levels.
Instance parse_instance(std::string_view json_text);
Instance read_instance(const std::string& path);

// Compact, deterministic serialization.
std::string serialize_instance(const Instance& inst);
void write_instance(const Instance& inst, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace rampmatch

#endif  // RAMPMATCH_INSTANCE_IO_HPP_
