#pragma once

#include <stdexcept>
#include <string>

namespace lacuna {

enum class Err {
  EmptySequence,
  NotIncreasing,
  RatioViolation,
  EpsilonRequired,
  DeltaTooLarge,
  LevelTooFine,
  EmptySet,
  MTooSmall,
  ConstantsInfeasible,
  EmptySurvivor,
  RatioNotAboveFour,
  TooLarge,
  WindowTooLarge,
  NonRationalTheta,
  LPInfeasible,
  GridTooCoarse,
  MaskTooWide,
  PeriodTooSmall,
  InvalidArgument,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::EmptySequence: return "EmptySequence";
    case Err::NotIncreasing: return "NotIncreasing";
    case Err::RatioViolation: return "RatioViolation";
    case Err::EpsilonRequired: return "EpsilonRequired";
    case Err::DeltaTooLarge: return "DeltaTooLarge";
    case Err::LevelTooFine: return "LevelTooFine";
    case Err::EmptySet: return "EmptySet";
    case Err::MTooSmall: return "MTooSmall";
    case Err::ConstantsInfeasible: return "ConstantsInfeasible";
    case Err::EmptySurvivor: return "EmptySurvivor";
    case Err::RatioNotAboveFour: return "RatioNotAboveFour";
    case Err::TooLarge: return "TooLarge";
    case Err::WindowTooLarge: return "WindowTooLarge";
    case Err::NonRationalTheta: return "NonRationalTheta";
    case Err::LPInfeasible: return "LPInfeasible";
    case Err::GridTooCoarse: return "GridTooCoarse";
    case Err::MaskTooWide: return "MaskTooWide";
    case Err::PeriodTooSmall: return "PeriodTooSmall";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error carrying a machine-checkable code and an optional index
/// payload (e.g. the offending position for RatioViolation).
class Error : public std::runtime_error {
 public:
  Error(Err code, std::string msg, long index = -1)
      : std::runtime_error(std::string(err_name(code)) + ": " + std::move(msg)),
        code_(code),
        index_(index) {}

  Err code() const { return code_; }
  long index() const { return index_; }

 private:
  Err code_;
  long index_;
};

[[noreturn]] inline void fail(Err code, std::string msg, long index = -1) {
  throw Error(code, std::move(msg), index);
}

}  // namespace lacuna
