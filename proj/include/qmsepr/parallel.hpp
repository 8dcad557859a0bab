// Copyright 2026 the qms-epr authors
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

#include <cstddef>
#include <functional>

namespace qmsepr {

// Worker cap for grid evaluations: QMS_EPR_THREADS when set (values < 1
// mean serial), hardware concurrency otherwise.
std::size_t max_workers();

// Run fn(0..n-1), possibly concurrently.  Each index writes only its own
// slot in caller-owned storage, so results are deterministic regardless
// of scheduling.  Exceptions from workers are rethrown on the caller.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qmsepr
