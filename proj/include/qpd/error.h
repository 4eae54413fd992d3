// Copyright 2026 The qpd Authors
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

#ifndef QPD_ERROR_H_
#define QPD_ERROR_H_

#include <stdexcept>
#include <string>

namespace qpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violated a documented domain or invariant (bad gamma, non-unitary
// matrix, malformed table). The CLI maps this to exit code 1.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The tomography design matrix does not determine every parameter.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed. The CLI maps this to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpd

#endif  // QPD_ERROR_H_
