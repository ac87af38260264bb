// Copyright 2026 The qsg Authors
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

#include "qsg/error.hpp"

namespace qsg {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::Overflow: return "Overflow";
    case Errc::SingularWeights: return "SingularWeights";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::UnsupportedFamily: return "UnsupportedFamily";
    case Errc::AmbiguousClustering: return "AmbiguousClustering";
    case Errc::AccidentalDegeneracy: return "AccidentalDegeneracy";
    case Errc::KernelEvaluationFailure: return "KernelEvaluationFailure";
    case Errc::A1Violation: return "A1Violation";
    case Errc::NotPositive: return "NotPositive";
    case Errc::SingularState: return "SingularState";
    case Errc::ExponentialOverflow: return "ExponentialOverflow";
    case Errc::DimensionLimit: return "DimensionLimit";
    case Errc::CutoffNonConvergence: return "CutoffNonConvergence";
    case Errc::FitWindowEmpty: return "FitWindowEmpty";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace qsg
