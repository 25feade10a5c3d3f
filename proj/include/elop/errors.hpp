/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELOP_ERRORS_HPP
#define ELOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace elop {

/// Violated mathematical precondition (non-invertible operator, inverse of a
/// non-power-of-two, index overflow, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad or missing run-time configuration (mode mixing, horizons, schedules).
class configuration_error : public std::runtime_error {
 public:
  explicit configuration_error(const std::string& what) : std::runtime_error(what) {}
};

/// Caller violated a documented operation precondition.
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// Magnitude outside the binary64 conversion window.
class conversion_overflow_error : public std::runtime_error {
 public:
  explicit conversion_overflow_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario text could not be parsed; carries a 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace elop

#endif  // ELOP_ERRORS_HPP
