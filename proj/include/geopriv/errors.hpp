// Copyright 2026 The geopriv Authors
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

#ifndef GEOPRIV_ERRORS_HPP_
#define GEOPRIV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace geopriv {

// Base class for all geopriv exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A coordinate or parameter outside its documented domain.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Planar meter/degree conversion requested within 1 degree of a pole.
class PolarRegionError : public Error {
 public:
  using Error::Error;
};

// A cell index that does not belong to its grid.
class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Truth coin always heads: the channel is deterministic and has no
// finite privacy-loss bound.
class NoPrivacyError : public Error {
 public:
  using Error::Error;
};

// Truth coin never heads: responses carry no information and the
// channel inversion divides by zero.
class DegenerateChannelError : public Error {
 public:
  using Error::Error;
};

// Per-cell aggregates disagree on the participant count.
class MismatchedNError : public Error {
 public:
  using Error::Error;
};

// Subscription refused outright by a deny-mode policy.
class DeniedByPolicyError : public Error {
 public:
  using Error::Error;
};

// Policy document problems. `kind` distinguishes a syntactically broken
// document from one that parses but violates an invariant.
class PolicyError : public Error {
 public:
  enum class Kind { parse, validation, missing_default };

  PolicyError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace geopriv

#endif  // GEOPRIV_ERRORS_HPP_
