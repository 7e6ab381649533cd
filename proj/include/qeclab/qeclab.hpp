// Copyright 2026 The qeclab Authors
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

#include "qeclab/bitvec.hpp"
#include "qeclab/blossom.hpp"
#include "qeclab/catalogue.hpp"
#include "qeclab/code.hpp"
#include "qeclab/decoders.hpp"
#include "qeclab/distance.hpp"
#include "qeclab/families.hpp"
#include "qeclab/gf2.hpp"
#include "qeclab/matching.hpp"
#include "qeclab/montecarlo.hpp"
#include "qeclab/noise.hpp"
#include "qeclab/pauli.hpp"
#include "qeclab/tableau.hpp"
