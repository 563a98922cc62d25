/* Copyright 2026 The Occlbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef OCCLBENCH_ERROR_H_
#define OCCLBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace occlbench {

// Base class for every error raised by the toolkit. Subclasses let callers
// distinguish malformed input from invalid geometry or a bad argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrong number of fields, bad header, unexpected structure.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A field that should be numeric is not.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A box violating left < right, top < bottom, or containing non-finite values.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied argument outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable file, failed write.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace occlbench

#endif  // OCCLBENCH_ERROR_H_
