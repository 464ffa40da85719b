#include "tempord/error.hpp"

namespace tempord {

const char* to_string(Errc code) {
    switch (code) {
        case Errc::SegmentTooLong: return "SegmentTooLong";
        case Errc::EmptyShiftRange: return "EmptyShiftRange";
        case Errc::BadThreshold: return "BadThreshold";
        case Errc::RateMismatch: return "RateMismatch";
        case Errc::BadConfig: return "BadConfig";
        case Errc::NoOverlap: return "NoOverlap";
        case Errc::InvalidSignal: return "InvalidSignal";
        case Errc::MisalignedSignals: return "MisalignedSignals";
        case Errc::RateTooLow: return "RateTooLow";
        case Errc::NoBeatsFound: return "NoBeatsFound";
        case Errc::TooFewBeats: return "TooFewBeats";
        case Errc::BadFactor: return "BadFactor";
        case Errc::DegenerateSegment: return "DegenerateSegment";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::NonUniformSampling: return "NonUniformSampling";
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::OffGridLag: return "OffGridLag";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace tempord
