#include "fibmult/error.hpp"
#include "fibmult/violation.hpp"

namespace fibmult {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CodomainMismatch: return "CodomainMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ReservedLabel: return "ReservedLabel";
    case ErrorCode::NotAFibration: return "NotAFibration";
    case ErrorCode::NoLift: return "NoLift";
    case ErrorCode::AmbiguousLift: return "AmbiguousLift";
    case ErrorCode::NotIso: return "NotIso";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MissingProducts: return "MissingProducts";
    case ErrorCode::LawViolation: return "LawViolation";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::NotExtensive: return "NotExtensive";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NotUnary: return "NotUnary";
    case ErrorCode::NoTriangle: return "NoTriangle";
    case ErrorCode::AmbiguousTriangle: return "AmbiguousTriangle";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::MissingDiagonal: return "MissingDiagonal";
    case ErrorCode::NotASection: return "NotASection";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredId: return "UndeclaredId";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::BadFlags: return "BadFlags";
  }
  return "Unknown";
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::DomCodViolation: return "DomCodViolation";
    case ViolationKind::IdentityViolation: return "IdentityViolation";
    case ViolationKind::AssociativityViolation: return "AssociativityViolation";
    case ViolationKind::FunctorViolation: return "FunctorViolation";
    case ViolationKind::NotFibrationInGroupoids: return "NotFibrationInGroupoids";
    case ViolationKind::NotDiscreteFibration: return "NotDiscreteFibration";
    case ViolationKind::NotDiscreteOpfibration: return "NotDiscreteOpfibration";
    case ViolationKind::ObjectMismatch: return "ObjectMismatch";
    case ViolationKind::SquareShape: return "SquareShape";
    case ViolationKind::SquareNotPullback: return "SquareNotPullback";
    case ViolationKind::MissingIdentitySquare: return "MissingIdentitySquare";
    case ViolationKind::HorizontalClosure: return "HorizontalClosure";
    case ViolationKind::VerticalClosure: return "VerticalClosure";
    case ViolationKind::ExistenceViolation: return "ExistenceViolation";
    case ViolationKind::UniquenessViolation: return "UniquenessViolation";
    case ViolationKind::SectionViolation: return "SectionViolation";
    case ViolationKind::PullbackNotSpecial: return "PullbackNotSpecial";
    case ViolationKind::MorphismNotSpecial: return "MorphismNotSpecial";
    case ViolationKind::MorphismNotCommutative: return "MorphismNotCommutative";
    case ViolationKind::MonoidSquareCoherence: return "MonoidSquareCoherence";
    case ViolationKind::TriangleShape: return "TriangleShape";
    case ViolationKind::TriangleCompositionClosure: return "TriangleCompositionClosure";
    case ViolationKind::TriangleIdentity: return "TriangleIdentity";
    case ViolationKind::PostCompositionClosure: return "PostCompositionClosure";
    case ViolationKind::OpfibrationExistence: return "OpfibrationExistence";
    case ViolationKind::OpfibrationUniqueness: return "OpfibrationUniqueness";
    case ViolationKind::FrobeniusViolation: return "FrobeniusViolation";
    case ViolationKind::BeckChevalleyViolation: return "BeckChevalleyViolation";
    case ViolationKind::CosquareShape: return "CosquareShape";
    case ViolationKind::CosquarePastingClosure: return "CosquarePastingClosure";
    case ViolationKind::BeckChevalley2Violation: return "BeckChevalley2Violation";
    case ViolationKind::PresentationLaw: return "PresentationLaw";
  }
  return "Unknown";
}

}  // namespace fibmult
