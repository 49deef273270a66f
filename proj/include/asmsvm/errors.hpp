/*
 * asmsvm - statistical shape model face alignment
 *
 * Copyright 2026 The asmsvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#ifndef ASMSVM_ERRORS_HPP_
#define ASMSVM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace asmsvm {

/**
 * Base class of every error raised by the library. The subclasses below
 * name the failure category so callers (and tests) can tell them apart.
 */
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// Dimension or element-count mismatch between two inputs.
class ArityError : public Error { public: using Error::Error; };
// A shape with zero centroid size where a non-degenerate one is required.
class DegenerateShapeError : public Error { public: using Error::Error; };
// Image dimensions too small for the requested operation.
class SizeError : public Error { public: using Error::Error; };
class ThresholdError : public Error { public: using Error::Error; };
class InsufficientDataError : public Error { public: using Error::Error; };
class ClassBalanceError : public Error { public: using Error::Error; };
class BoxError : public Error { public: using Error::Error; };
class InitializationError : public Error { public: using Error::Error; };
class SplitError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

/**
 * Text-format parse failure. Carries the 1-based line number that triggered
 * it (0 when the error is not tied to a line, e.g. a premature end of file).
 */
class ParseError : public Error
{
public:
	ParseError(const std::string& message, int line)
	    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
	{
	}
	int line() const noexcept { return line_; }

private:
	int line_;
};

// Binary image decode failure (bad magic, unsupported depth, truncation).
class DecodeError : public Error { public: using Error::Error; };
class VersionError : public Error { public: using Error::Error; };
class CorruptionError : public Error { public: using Error::Error; };

} // namespace asmsvm

#endif /* ASMSVM_ERRORS_HPP_ */
