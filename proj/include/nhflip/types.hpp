#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nhflip {

using cplx = std::complex<double>;
inline constexpr cplx IU{0.0, 1.0};  // imaginary unit

// Error categories map to CLI exit codes: validation=2, numerical=3, io=4.
enum class ErrorKind { validation, numerical, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define NHFLIP_DEFINE_ERROR(Name, Kind)                     \
  struct Name : Error {                                     \
    explicit Name(const std::string& m)                     \
        : Error(ErrorKind::Kind, std::string(#Name ": ") + m) {} \
  }

NHFLIP_DEFINE_ERROR(EmbeddingViolation, validation);
NHFLIP_DEFINE_ERROR(DuplicateSite, validation);
NHFLIP_DEFINE_ERROR(NonPositiveHopping, validation);
NHFLIP_DEFINE_ERROR(TimeBeyondSchedule, validation);
NHFLIP_DEFINE_ERROR(StepTooLarge, validation);
NHFLIP_DEFINE_ERROR(ScheduleMisaligned, validation);
NHFLIP_DEFINE_ERROR(ZeroInitialState, validation);
NHFLIP_DEFINE_ERROR(TrajectoryTooShort, validation);
NHFLIP_DEFINE_ERROR(UnknownPreset, validation);
NHFLIP_DEFINE_ERROR(ParseError, validation);

NHFLIP_DEFINE_ERROR(BandEdgeSingularity, numerical);
NHFLIP_DEFINE_ERROR(QuadratureNonConvergence, numerical);
NHFLIP_DEFINE_ERROR(ExtrapolationUnstable, numerical);
NHFLIP_DEFINE_ERROR(QRNonConvergence, numerical);

NHFLIP_DEFINE_ERROR(IoFailure, io);

#undef NHFLIP_DEFINE_ERROR

}  // namespace nhflip
