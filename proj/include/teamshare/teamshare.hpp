// Copyright 2026 The Authors.
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

#include "teamshare/agent_set.hpp"
#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/exact.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/instances.hpp"
#include "teamshare/objectives.hpp"
#include "teamshare/symmetric.hpp"
#include "teamshare/validate.hpp"
#include "teamshare/value_fn.hpp"
#include "teamshare/xos_approx.hpp"
