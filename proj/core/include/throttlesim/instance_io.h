// Copyright 2026 The throttlesim Authors.
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

#ifndef THROTTLESIM_INSTANCE_IO_H_
#define THROTTLESIM_INSTANCE_IO_H_

#include <iosfwd>
#include <string>

#include "throttlesim/instances.h"
#include "throttlesim/model.h"

namespace throttlesim {

// An instance plus the feedback mode it is meant to be run under.
struct InstanceDocument {
  Instance instance;
  InfoMode mode = InfoMode::kFull;
};

// Line-oriented text format; every number uses shortest round-trip
// formatting, so Read(Write(x)) reproduces x exactly:
//
//   name <word>
//   horizon <T>
//   rho <rho>
//   vmax <vmax>
//   mode full|partial
//   price_grid <grid>          (0 = unknown)
//   values iid                 one 'point weight' line per atom, then 'end'
//   values fixed               one value per line, then 'end'
//   values mixture             'component <weight>' starts each sequence,
//                              values one per line, then 'end'
//   prices iid | prices fixed  as for values
//   prices adaptive entry_responsive <if_enter> <if_skip>
//
// Blank lines and lines starting with '#' are ignored. Adaptive value
// sources and user-defined adaptive price rules cannot be written; doing so
// throws std::invalid_argument.
void WriteInstance(std::ostream& os, const InstanceDocument& doc);
std::string InstanceToText(const InstanceDocument& doc);

// Throws std::invalid_argument with a line number on malformed input, and
// whatever Instance::Validate throws on an inconsistent instance.
InstanceDocument ReadInstance(std::istream& is);
InstanceDocument ReadInstanceFile(const std::string& path);

}  // namespace throttlesim

#endif  // THROTTLESIM_INSTANCE_IO_H_
