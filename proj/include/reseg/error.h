#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace reseg {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (exit code 2 in the CLI).
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public DataError {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : DataError(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Two inputs that must be index-aligned have different lengths.
class LengthMismatchError : public DataError {
 public:
  LengthMismatchError(const std::string& what, std::size_t left, std::size_t right)
      : DataError(what + " (" + std::to_string(left) + " vs " + std::to_string(right) + ")"),
        left_(left),
        right_(right) {}
  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }

 private:
  std::size_t left_;
  std::size_t right_;
};

class ZeroVarianceError : public DataError {
 public:
  using DataError::DataError;
};

// Anything that went wrong talking to an external aligner/embedding service
// (exit code 3 in the CLI).
class ServiceError : public Error {
 public:
  using Error::Error;
};

class TransportError : public ServiceError {
 public:
  TransportError(const std::string& what, std::string request_id = {})
      : ServiceError(request_id.empty() ? what : what + " [request " + request_id + "]"),
        request_id_(std::move(request_id)) {}
  const std::string& request_id() const { return request_id_; }

 private:
  std::string request_id_;
};

// The service answered, but the answer is unusable.
class ProtocolError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class LinkBoundsError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// An embedding provider failed while processing a particular segment.
class ProviderError : public ServiceError {
 public:
  ProviderError(const std::string& what, std::size_t segment)
      : ServiceError("segment " + std::to_string(segment) + ": " + what), segment_(segment) {}
  std::size_t segment() const { return segment_; }

 private:
  std::size_t segment_;
};

}  // namespace reseg
