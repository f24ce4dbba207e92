// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal fork-join helper. Worker count comes from LP_RECOVERY_THREADS when
// set, otherwise from the hardware.

#ifndef LPREC_PARALLEL_HPP
#define LPREC_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>

namespace lprec {

// Number of workers to use; always >= 1.
int worker_count();

// Calls body(i) for i in [0, n). Iterations must be independent. If any
// iteration throws, the exception from the lowest index is rethrown after
// all workers finish, so failures are reported deterministically. Calls made
// from inside another parallel_for body run inline on the calling worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int threads = 0);

}  // namespace lprec

#endif  // LPREC_PARALLEL_HPP
