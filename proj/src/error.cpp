#include "scai/error.hpp"

#include <utility>

namespace scai {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRecord: return "MalformedRecord";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownResearcher: return "UnknownResearcher";
        case ErrorCode::EmptyName: return "EmptyName";
        case ErrorCode::FocalNotAuthorOfCited: return "FocalNotAuthorOfCited";
        case ErrorCode::SelfExceedsTotal: return "SelfExceedsTotal";
        case ErrorCode::ExternalExceedsAll: return "ExternalExceedsAll";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InsufficientCohort: return "InsufficientCohort";
        case ErrorCode::MalformedProfileFile: return "MalformedProfileFile";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::ZeroGap: return "ZeroGap";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidRate: return "InvalidRate";
        case ErrorCode::NoEligibleReports: return "NoEligibleReports";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::string subject,
             std::optional<std::size_t> line, std::optional<std::size_t> count)
    : std::runtime_error(std::move(message)),
      code_(code),
      subject_(std::move(subject)),
      line_(line),
      count_(count) {}

}  // namespace scai
