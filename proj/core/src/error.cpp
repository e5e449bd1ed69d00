#include "ggc/error.hpp"

namespace ggc {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::NonPositiveWeight: return "NonPositiveWeight";
        case Errc::IsolatedVertex: return "IsolatedVertex";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::InvalidArgs: return "InvalidArgs";
        case Errc::NonPositiveDegree: return "NonPositiveDegree";
        case Errc::QueueEmpty: return "QueueEmpty";
        case Errc::NotNeighbors: return "NotNeighbors";
        case Errc::DeadCluster: return "DeadCluster";
        case Errc::QueueExhausted: return "QueueExhausted";
        case Errc::EmptyCluster: return "EmptyCluster";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::TooLarge: return "TooLarge";
        case Errc::AuditFailure: return "AuditFailure";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace ggc
