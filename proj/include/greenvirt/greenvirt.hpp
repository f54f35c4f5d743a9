// Copyright 2026 The greenvirt Authors
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

#ifndef GREENVIRT_GREENVIRT_HPP
#define GREENVIRT_GREENVIRT_HPP

#include <greenvirt/economics.hpp>
#include <greenvirt/experiment.hpp>
#include <greenvirt/geometry.hpp>
#include <greenvirt/grouping.hpp>
#include <greenvirt/lp.hpp>
#include <greenvirt/molpp.hpp>
#include <greenvirt/power_energy.hpp>
#include <greenvirt/scenario.hpp>
#include <greenvirt/sleeping.hpp>

#endif // GREENVIRT_GREENVIRT_HPP
