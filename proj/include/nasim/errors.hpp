// Copyright 2026 The nasim Authors
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

namespace nasim {

// Error categories. The numeric values are mirrored by nasim_status in nasim.h.
enum class ErrorCode : int {
    kArgument = 1,
    kCapacity = 2,
    kValidation = 3,
    kInternal = 4,
    kParse = 5,
    kIo = 6,
    kDegenerate = 7,
    kLowering = 8,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string &w) : Error(ErrorCode::kArgument, w) {
    }
};
struct CapacityError : Error {
    explicit CapacityError(const std::string &w) : Error(ErrorCode::kCapacity, w) {
    }
};
struct ValidationError : Error {
    explicit ValidationError(const std::string &w) : Error(ErrorCode::kValidation, w) {
    }
};
struct InternalError : Error {
    explicit InternalError(const std::string &w) : Error(ErrorCode::kInternal, w) {
    }
};
struct ParseError : Error {
    explicit ParseError(const std::string &w) : Error(ErrorCode::kParse, w) {
    }
};
struct IoError : Error {
    explicit IoError(const std::string &w) : Error(ErrorCode::kIo, w) {
    }
};
// Normalized fidelity is undefined when the ideal distribution is uniform.
struct DegenerateError : Error {
    explicit DegenerateError(const std::string &w) : Error(ErrorCode::kDegenerate, w) {
    }
};
struct LoweringError : Error {
    explicit LoweringError(const std::string &w) : Error(ErrorCode::kLowering, w) {
    }
};

}  // namespace nasim
