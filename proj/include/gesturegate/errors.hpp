#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gesturegate {

/// Base class for every error raised by the library. Errors caused by bad
/// input data derive from Error directly; NumericalError marks failures of
/// the numerics themselves (non-finite intermediates and the like).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingJoint : public Error {
 public:
  MissingJoint(std::size_t frame_index, std::string joint)
      : Error("frame " + std::to_string(frame_index) + ": missing joint '" + joint + "'"),
        frame_index_(frame_index),
        joint_(std::move(joint)) {}

  std::size_t frame_index() const { return frame_index_; }
  const std::string& joint() const { return joint_; }

 private:
  std::size_t frame_index_;
  std::string joint_;
};

class NonMonotonicTimestamp : public Error {
 public:
  explicit NonMonotonicTimestamp(std::size_t frame_index)
      : Error("frame " + std::to_string(frame_index) + ": timestamp not strictly increasing"),
        frame_index_(frame_index) {}

  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

class DegenerateReference : public Error {
 public:
  explicit DegenerateReference(std::size_t frame_index)
      : Error("frame " + std::to_string(frame_index) + ": reference joints coincide"),
        frame_index_(frame_index) {}

  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

class CollinearShoulders : public Error {
 public:
  static constexpr std::size_t kNoFrame = static_cast<std::size_t>(-1);

  explicit CollinearShoulders(std::size_t frame_index = kNoFrame)
      : Error(frame_index == kNoFrame
                  ? std::string("shoulder triple is collinear; frontal plane undefined")
                  : "frame " + std::to_string(frame_index) +
                        ": shoulder triple is collinear; frontal plane undefined"),
        frame_index_(frame_index) {}

  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

class ZeroVector : public Error {
 public:
  static constexpr std::size_t kNoFrame = static_cast<std::size_t>(-1);

  explicit ZeroVector(std::size_t frame_index = kNoFrame)
      : Error(frame_index == kNoFrame
                  ? std::string("vector norm below tolerance")
                  : "frame " + std::to_string(frame_index) + ": vector norm below tolerance"),
        frame_index_(frame_index) {}

  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

class OutOfRange : public Error {
 public:
  static constexpr std::size_t kNoFrame = static_cast<std::size_t>(-1);

  explicit OutOfRange(double value, std::size_t frame_index = kNoFrame)
      : Error(frame_index == kNoFrame
                  ? "angle " + std::to_string(value) + " outside [-90, 90]"
                  : "frame " + std::to_string(frame_index) + ": angle " + std::to_string(value) +
                        " outside [-90, 90]"),
        value_(value),
        frame_index_(frame_index) {}

  double value() const { return value_; }
  std::size_t frame_index() const { return frame_index_; }

 private:
  double value_;
  std::size_t frame_index_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySeries : public Error {
 public:
  using Error::Error;
};

class InsufficientTraining : public Error {
 public:
  using Error::Error;
};

class EmptyTraining : public Error {
 public:
  using Error::Error;
};

class SequenceTooShort : public Error {
 public:
  explicit SequenceTooShort(std::size_t index)
      : Error("training sequence " + std::to_string(index) + " is too short"), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class SymbolOutOfRange : public Error {
 public:
  SymbolOutOfRange(std::size_t t, int symbol, int n_symbols)
      : Error("observation " + std::to_string(t) + ": symbol " + std::to_string(symbol) +
              " outside [1, " + std::to_string(n_symbols) + "]"),
        t_(t),
        symbol_(symbol) {}

  std::size_t t() const { return t_; }
  int symbol() const { return symbol_; }

 private:
  std::size_t t_;
  int symbol_;
};

class InsufficientCalibration : public Error {
 public:
  using Error::Error;
};

class TooShort : public Error {
 public:
  using Error::Error;
};

class MissingActivityData : public Error {
 public:
  explicit MissingActivityData(const std::string& activity)
      : Error("no data for activity '" + activity + "'"), activity_(activity) {}

  const std::string& activity() const { return activity_; }

 private:
  std::string activity_;
};

}  // namespace gesturegate
