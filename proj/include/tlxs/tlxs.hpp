// Copyright 2026 The TLXS Authors
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

#ifndef TLXS_TLXS_HPP_
#define TLXS_TLXS_HPP_

#include "tlxs/base_codec.hpp"
#include "tlxs/container.hpp"
#include "tlxs/corpus.hpp"
#include "tlxs/extension.hpp"
#include "tlxs/image.hpp"
#include "tlxs/metrics.hpp"
#include "tlxs/pipeline.hpp"
#include "tlxs/pnm.hpp"
#include "tlxs/predictive.hpp"
#include "tlxs/quantizer.hpp"
#include "tlxs/residual.hpp"
#include "tlxs/rice.hpp"
#include "tlxs/wavelet.hpp"
#include "tlxs/wavelet_lossless.hpp"

#endif  // TLXS_TLXS_HPP_
