/*
 * Copyright 2026 The ezone Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ezone/errors.hpp"

#include <fmt/format.h>

namespace ezone {

UnreachableBearingError::UnreachableBearingError(double bearing, double max_bearing)
    : DomainError(fmt::format("bearing {:.17g} is not attained by any admissible path (max |bearing| {:.17g})",
                              bearing, max_bearing)),
      bearing_(bearing),
      max_bearing_(max_bearing)
{}

NumericError::NumericError(const std::string& what, int iterations, double residual)
    : std::runtime_error(fmt::format("{} (iterations={}, residual={:.3e})", what, iterations, residual)),
      iterations_(iterations),
      residual_(residual)
{}

}  // namespace ezone
