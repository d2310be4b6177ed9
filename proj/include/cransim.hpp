// SPDX-License-Identifier: Apache-2.0
//
// cransim: downlink simulator for clustered cloud-RAN antenna domains
// Copyright (C) 2026 The cransim Authors
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

#ifndef CRANSIM_CRANSIM_HPP
#define CRANSIM_CRANSIM_HPP

#include "cransim/association.hpp"
#include "cransim/channel.hpp"
#include "cransim/clustering.hpp"
#include "cransim/config.hpp"
#include "cransim/linalg.hpp"
#include "cransim/metrics.hpp"
#include "cransim/output.hpp"
#include "cransim/precoding.hpp"
#include "cransim/scenario.hpp"
#include "cransim/simulation.hpp"
#include "cransim/sweep.hpp"

#endif
