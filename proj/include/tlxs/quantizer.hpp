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

#ifndef TLXS_QUANTIZER_HPP_
#define TLXS_QUANTIZER_HPP_

#include <cstdint>
#include <cstdlib>

namespace tlxs {

// Dead-zone scalar quantizer: sign(c) * floor(|c| / step). Step 1 is exact.
inline constexpr int32_t QuantizeDeadzone(int32_t coeff, int32_t step) {
  const int32_t mag = (coeff < 0 ? -coeff : coeff) / step;
  return coeff < 0 ? -mag : mag;
}

// Midpoint reconstruction inside the quantization bin; zero stays zero.
inline constexpr int32_t DequantizeDeadzone(int32_t index, int32_t step) {
  if (index == 0) return 0;
  const int32_t mag = (index < 0 ? -index : index) * step + step / 2;
  return index < 0 ? -mag : mag;
}

}  // namespace tlxs

#endif  // TLXS_QUANTIZER_HPP_
