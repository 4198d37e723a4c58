// Copyright 2026 The bincdf Authors
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

#include "bincdf/config.hpp"

#include <sstream>
#include <stdexcept>

namespace bincdf {

void AsymptoticConfig::validate() const {
  std::ostringstream os;
  if (max_Fk_terms < 1 || max_Fk_terms > 4) {
    os << "AsymptoticConfig: max_Fk_terms=" << max_Fk_terms
       << " outside [1, 4]";
    throw std::domain_error(os.str());
  }
  if (max_Ck_terms < 1 || max_Ck_terms > 8) {
    os << "AsymptoticConfig: max_Ck_terms=" << max_Ck_terms
       << " outside [1, 8]";
    throw std::domain_error(os.str());
  }
  if (!(taylor_switch_radius > 0.0) || !(taylor_switch_radius <= 0.5)) {
    os << "AsymptoticConfig: taylor_switch_radius=" << taylor_switch_radius
       << " outside (0, 0.5]";
    throw std::domain_error(os.str());
  }
  if (!(newton_tol > 0.0) || !(newton_tol < 1e-3)) {
    os << "AsymptoticConfig: newton_tol=" << newton_tol
       << " outside (0, 1e-3)";
    throw std::domain_error(os.str());
  }
  if (newton_max_iter < 4) {
    os << "AsymptoticConfig: newton_max_iter=" << newton_max_iter
       << " must be at least 4";
    throw std::domain_error(os.str());
  }
  if (!(series_radius_guard > 0.0) || !(series_radius_guard <= 0.8)) {
    os << "AsymptoticConfig: series_radius_guard=" << series_radius_guard
       << " outside (0, 0.8]";
    throw std::domain_error(os.str());
  }
  if (!(eta1_series_switch > 0.0) || !(eta1_series_switch <= 0.5)) {
    os << "AsymptoticConfig: eta1_series_switch=" << eta1_series_switch
       << " outside (0, 0.5]";
    throw std::domain_error(os.str());
  }
  if (!(exact_probe_nu_max >= 1.0)) {
    os << "AsymptoticConfig: exact_probe_nu_max=" << exact_probe_nu_max
       << " must be at least 1";
    throw std::domain_error(os.str());
  }
  if (!(probe_error_band >= 0.0) || !(probe_error_band < 0.5)) {
    os << "AsymptoticConfig: probe_error_band=" << probe_error_band
       << " outside [0, 0.5)";
    throw std::domain_error(os.str());
  }
  if (!(uniformity_delta > 0.0) || !(uniformity_delta < 0.5)) {
    os << "AsymptoticConfig: uniformity_delta=" << uniformity_delta
       << " outside (0, 0.5)";
    throw std::domain_error(os.str());
  }
}

}  // namespace bincdf
