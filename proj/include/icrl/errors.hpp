#pragma once

#include <stdexcept>
#include <string>

namespace icrl {

/// Malformed caller input: bad action grammar, wrong lengths, incompatible suites.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance generation failed, e.g. a maze path range no layout can satisfy.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An observation contradicts what a belief structure already knows.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Remote agent could not be reached (after retries). Aborts a run; never a game step.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Remote agent answered with something that is not a chat completion.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values in an objective or parameter vector.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace icrl
