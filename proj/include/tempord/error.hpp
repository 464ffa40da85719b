#ifndef TEMPORD_ERROR_HPP
#define TEMPORD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tempord {

enum class Errc {
    // configuration / record validation
    SegmentTooLong,
    EmptyShiftRange,
    BadThreshold,
    RateMismatch,
    BadConfig,
    NoOverlap,
    // signal construction
    InvalidSignal,
    MisalignedSignals,
    // preprocessing
    RateTooLow,
    NoBeatsFound,
    TooFewBeats,
    BadFactor,
    DegenerateSegment,
    // metrics
    LengthMismatch,
    // file I/O
    ParseError,
    NonUniformSampling,
    MissingColumn,
    OffGridLag,
    IoError,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace tempord

#endif
