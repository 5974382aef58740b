// include/pseval/pseval.hpp

// Copyright 2026  The pseval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "pseval/classcatalog.hpp"
#include "pseval/config.hpp"
#include "pseval/corpus.hpp"
#include "pseval/diagnostics.hpp"
#include "pseval/error.hpp"
#include "pseval/metrics.hpp"
#include "pseval/nfc.hpp"
#include "pseval/report.hpp"
#include "pseval/scriptid.hpp"
#include "pseval/stats.hpp"
#include "pseval/strata.hpp"
#include "pseval/textnorm.hpp"
#include "pseval/utf8.hpp"
