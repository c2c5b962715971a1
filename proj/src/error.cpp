#include "compop/error.hpp"

namespace compop {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::IdentityMap: return "IdentityMap";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::PoleInsideDisk: return "PoleInsideDisk";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::SymbolNotAdmissible: return "SymbolNotAdmissible";
    case ErrorCode::BadShift: return "BadShift";
    case ErrorCode::CenterOutsideDisk: return "CenterOutsideDisk";
    case ErrorCode::WrongSpace: return "WrongSpace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularTruncation: return "SingularTruncation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BadAnnulus: return "BadAnnulus";
    case ErrorCode::Unresolved: return "Unresolved";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace compop
