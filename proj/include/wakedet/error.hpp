#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wakedet {

enum class ErrorCode {
  InvalidImage,
  MalformedHeader,
  MalformedPayload,
  UnsupportedMaxval,
  TruncatedPayload,
  NegativeSigma,
  InvalidScene,
  UnknownWavelet,
  BadDimensions,
  MalformedPyramid,
  EmptySubband,
  NegativeThreshold,
  EmptyVector,
  EvenWindow,
  EmptyImage,
  ZeroNoise,
  DimensionMismatch,
  NonSquareImage,
  BadThetaStep,
  NoValidCells,
  OutOfRangeTheta,
  InvalidConfig,
  IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidImage: return "InvalidImage";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedPayload: return "MalformedPayload";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::NegativeSigma: return "NegativeSigma";
    case ErrorCode::InvalidScene: return "InvalidScene";
    case ErrorCode::UnknownWavelet: return "UnknownWavelet";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::MalformedPyramid: return "MalformedPyramid";
    case ErrorCode::EmptySubband: return "EmptySubband";
    case ErrorCode::NegativeThreshold: return "NegativeThreshold";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::EvenWindow: return "EvenWindow";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::ZeroNoise: return "ZeroNoise";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSquareImage: return "NonSquareImage";
    case ErrorCode::BadThetaStep: return "BadThetaStep";
    case ErrorCode::NoValidCells: return "NoValidCells";
    case ErrorCode::OutOfRangeTheta: return "OutOfRangeTheta";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wakedet
