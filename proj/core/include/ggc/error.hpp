#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggc {

enum class Errc {
    ParseError,
    DuplicateEdge,
    SelfLoop,
    NonPositiveWeight,
    IsolatedVertex,
    IndexOutOfRange,
    InvalidArgs,
    NonPositiveDegree,
    QueueEmpty,
    NotNeighbors,
    DeadCluster,
    QueueExhausted,
    EmptyCluster,
    LengthMismatch,
    TooLarge,
    AuditFailure,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Thrown by the merge loop in strict mode when the candidate queue empties
// before the target cluster count is reached. Carries the labels of the
// partial solution so callers can persist it.
class QueueExhaustedError : public Error {
public:
    QueueExhaustedError(const std::string& message, std::vector<std::int32_t> partial_labels)
        : Error(Errc::QueueExhausted, message), partial_labels_(std::move(partial_labels)) {}

    const std::vector<std::int32_t>& partial_labels() const noexcept { return partial_labels_; }

private:
    std::vector<std::int32_t> partial_labels_;
};

}  // namespace ggc
