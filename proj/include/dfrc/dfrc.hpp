// SPDX-License-Identifier: Apache-2.0
//
// dfrc-ci: constructive-interference waveform design for dual-functional
// radar-communication transmitters
// Copyright (C) 2026 The dfrc-ci authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFRC_DFRC_HPP
#define DFRC_DFRC_HPP

#include "ci_constraints.hpp"
#include "convex_kernel.hpp"
#include "numerics.hpp"
#include "signal_model.hpp"
#include "solvers.hpp"

#endif  // DFRC_DFRC_HPP
