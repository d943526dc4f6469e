#pragma once

#include <stdexcept>
#include <string>

namespace amen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept = 0;
};

class GraphError : public Error {
 public:
  enum class Code { OutOfRange, SelfLoop, Malformed };

  GraphError(Code code, long long vertex, const std::string& what)
      : Error(what), code_(code), vertex_(vertex) {}

  Code code() const noexcept { return code_; }
  long long vertex() const noexcept { return vertex_; }
  const char* kind() const noexcept override {
    switch (code_) {
      case Code::OutOfRange: return "OutOfRange";
      case Code::SelfLoop: return "SelfLoop";
      case Code::Malformed: return "Malformed";
    }
    return "GraphError";
  }

 private:
  Code code_;
  long long vertex_;
};

class Graph6Error : public Error {
 public:
  Graph6Error(std::size_t position, const std::string& reason)
      : Error("bad graph6 at position " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }
  const char* kind() const noexcept override { return "BadGraph6"; }

 private:
  std::size_t position_;
  std::string reason_;
};

class PartitionError : public Error {
 public:
  enum class Code { InvalidPartition, NotEquitable };

  PartitionError(Code code, const std::string& what) : Error(what), code_(code) {}

  Code code() const noexcept { return code_; }
  const char* kind() const noexcept override {
    return code_ == Code::InvalidPartition ? "InvalidPartition" : "NotEquitable";
  }

 private:
  Code code_;
};

/// Raised by the brute-force oracles when an instance exceeds the size guard.
class TooLarge : public Error {
 public:
  TooLarge(int n, int limit)
      : Error("instance has " + std::to_string(n) + " vertices, oracle limit is " +
              std::to_string(limit)),
        n_(n),
        limit_(limit) {}

  int n() const noexcept { return n_; }
  int limit() const noexcept { return limit_; }
  const char* kind() const noexcept override { return "TooLarge"; }

 private:
  int n_;
  int limit_;
};

/// Generic error with a caller-chosen kind tag (BadSpec, BadParams, ...).
class TaggedError : public Error {
 public:
  TaggedError(std::string tag, const std::string& what) : Error(what), tag_(std::move(tag)) {}
  const char* kind() const noexcept override { return tag_.c_str(); }

 private:
  std::string tag_;
};

}  // namespace amen
