#include "uebkit/error.hpp"

namespace uebkit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::FullSpace: return "FullSpace";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::BadCardinality: return "BadCardinality";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace uebkit
