//
// Copyright 2026 The cfprobe Authors
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
//

#ifndef CFPROBE_ERRORS_H_
#define CFPROBE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfprobe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The statement has no site a rule for the requested probe kind can alter.
class NoPerturbationSite : public Error {
 public:
  using Error::Error;
};

// The statement has no site a mitigation rewrite for the requested kind can
// hedge.
class NoRewriteSite : public Error {
 public:
  using Error::Error;
};

class EmptyCounterfactualSet : public Error {
 public:
  EmptyCounterfactualSet()
      : Error("sensitivity requires at least one counterfactual") {}
  using Error::Error;
};

// Network failure that persisted through every retry.
class TransportError : public Error {
 public:
  using Error::Error;
};

class MissingFile : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("input is empty") {}
  using Error::Error;
};

class SingleClassValidation : public Error {
 public:
  SingleClassValidation()
      : Error("calibration set must contain both classes") {}
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace cfprobe

#endif  // CFPROBE_ERRORS_H_
