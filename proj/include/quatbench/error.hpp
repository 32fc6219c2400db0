// Copyright 2026 The quatbench Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace quatbench {

enum class Errc {
  ZeroNorm,
  InvalidCount,
  InvalidFraction,
  DegenerateData,
  SingularScatter,
  InvalidK,
  WidthMismatch,
  LengthMismatch,
  EmptyInput,
  ZeroTrueValue,
  InvalidLabel,
  InvalidConfig,
  Parse,
  Io,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ZeroNorm: return "ZeroNorm";
    case Errc::InvalidCount: return "InvalidCount";
    case Errc::InvalidFraction: return "InvalidFraction";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::SingularScatter: return "SingularScatter";
    case Errc::InvalidK: return "InvalidK";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ZeroTrueValue: return "ZeroTrueValue";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

// Every recoverable failure in the library is reported as an Error carrying
// a code; the message is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace quatbench
