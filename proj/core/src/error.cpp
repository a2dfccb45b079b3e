// Copyright 2026 The lowtrot Authors
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

#include "lowtrot/error.hpp"

namespace lowtrot {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::EmptyHamiltonian: return "EmptyHamiltonian";
        case Errc::NonHermitianTerm: return "NonHermitianTerm";
        case Errc::SupportOutOfRange: return "SupportOutOfRange";
        case Errc::SignChangingCoefficient: return "SignChangingCoefficient";
        case Errc::TimeOutOfRange: return "TimeOutOfRange";
        case Errc::OrderTooHigh: return "OrderTooHigh";
        case Errc::GapCollapse: return "GapCollapse";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::UnsupportedOrder: return "UnsupportedOrder";
        case Errc::ScheduleGroupMismatch: return "ScheduleGroupMismatch";
        case Errc::TermBudgetExceeded: return "TermBudgetExceeded";
        case Errc::NoSolution: return "NoSolution";
        case Errc::InvalidSparsity: return "InvalidSparsity";
        case Errc::ConfigParse: return "ConfigParse";
        case Errc::ScenarioFailure: return "ScenarioFailure";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::NonPositiveValue: return "NonPositiveValue";
    }
    return "Unknown";
}

}  // namespace lowtrot
