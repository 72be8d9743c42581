// Copyright 2026 The nsqkd Authors
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

#include <sstream>

#include "nsqkd/errors.hpp"

namespace nsqkd {

template <typename Scalar>
void LinearProgram<Scalar>::check_dimensions() const {
  const Eigen::Index n = num_vars();
  const Eigen::Index m = num_equalities();
  std::ostringstream os;
  if (equalities.cols() != n && m > 0) {
    os << "equality matrix has " << equalities.cols() << " columns, expected " << n;
  } else if (rhs.size() != m) {
    os << "rhs has " << rhs.size() << " entries, expected " << m;
  } else if (lower.size() != n || upper.size() != n) {
    os << "bound vectors must have " << n << " entries";
  } else if (!var_names.empty() && static_cast<Eigen::Index>(var_names.size()) != n) {
    os << "var_names has " << var_names.size() << " entries, expected " << n;
  } else {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (lower(j) > upper(j)) {
        os << "variable " << j << " has lower bound above upper bound";
        break;
      }
    }
  }
  if (!os.str().empty()) throw DomainError(os.str());
}

}  // namespace nsqkd
