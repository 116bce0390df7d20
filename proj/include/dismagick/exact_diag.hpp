// Copyright 2026 The Dismagick Authors
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

#pragma once

namespace dismagick {

/// Ground energy of the open spin-1/2 Heisenberg chain from Lanczos in the
/// lowest-|Sz| magnetization sector. Converged to about 1e-12; 2 <= L <= 26.
double heisenberg_ground_energy_exact(int length);

}  // namespace dismagick
