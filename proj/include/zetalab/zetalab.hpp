// Copyright 2026 The zetalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "zetalab/real.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/divisor.hpp"
#include "zetalab/laguerre.hpp"
#include "zetalab/zeta.hpp"
#include "zetalab/impulse.hpp"
#include "zetalab/explicit_formula.hpp"
#include "zetalab/growth.hpp"
#include "zetalab/io.hpp"
