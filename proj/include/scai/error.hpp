#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scai {

enum class ErrorCode {
    MalformedRecord,
    DanglingReference,
    DuplicateId,
    UnknownResearcher,
    EmptyName,
    FocalNotAuthorOfCited,
    SelfExceedsTotal,
    ExternalExceedsAll,
    InvalidParams,
    InsufficientCohort,
    MalformedProfileFile,
    EmptyInput,
    EmptyGroup,
    ZeroGap,
    OutOfRange,
    InvalidSpec,
    InvalidRate,
    NoEligibleReports,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `subject` carries the offending
// identifier or path; `line` the 1-based record number for parse errors;
// `count` the observed size for cohort-size errors.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string subject = {},
          std::optional<std::size_t> line = std::nullopt,
          std::optional<std::size_t> count = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::string& subject() const noexcept { return subject_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    std::optional<std::size_t> count() const noexcept { return count_; }

private:
    ErrorCode code_;
    std::string subject_;
    std::optional<std::size_t> line_;
    std::optional<std::size_t> count_;
};

}  // namespace scai
