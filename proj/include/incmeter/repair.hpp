// Copyright 2026 The incmeter Authors.
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

#ifndef INCMETER_REPAIR_HPP_
#define INCMETER_REPAIR_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "incmeter/model.hpp"

namespace incmeter {

enum class Method { kExact, kBrute, kLocalRatio, kRandomized };

std::string_view to_string(Method m);

// A set of deleted tuples hitting every conflict, and the size of the
// sub-instance left after deleting them.
struct RepairSolution {
  TidSet deleted;
  std::size_t repair_size = 0;
  Method method = Method::kExact;
  bool optimal = false;
};

enum class RepairKind { kSubset, kCardinality };

// Repairs given by the tuples they keep.
struct RepairSet {
  std::vector<TidSet> repairs;  // sorted
  RepairKind kind = RepairKind::kSubset;
};

// Attribute `position` (1-based) of tuple `tid` set to null.
struct CellChange {
  Tid tid;
  std::size_t position = 0;

  friend auto operator<=>(const CellChange&, const CellChange&) = default;
};

struct NullRepairSolution {
  std::vector<CellChange> changes;  // sorted
  std::size_t atv = 0;              // attribute values in the instance
};

}  // namespace incmeter

#endif  // INCMETER_REPAIR_HPP_
