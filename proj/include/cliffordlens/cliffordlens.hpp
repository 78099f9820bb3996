// Copyright 2026 The cliffordlens Authors
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

// Core library. serialize.hpp and cli.hpp pull in the vendored JSON and
// CLI11 headers and are included separately.
#include "cliffordlens/clifford.hpp"
#include "cliffordlens/dense.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/lensing.hpp"
#include "cliffordlens/metrology.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/random.hpp"
#include "cliffordlens/shadows.hpp"
#include "cliffordlens/sld.hpp"
