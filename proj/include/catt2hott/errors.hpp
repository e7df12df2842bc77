#pragma once

#include <stdexcept>
#include <string>

namespace catt2hott {

enum class ErrorKind {
  UnboundVariable,
  DuplicateVariable,
  IllTypedDeclaration,
  SourceTargetTypeMismatch,
  MissingBinding,
  ExtraBinding,
  TypeMismatch,
  NotPs,
  NotArrowType,
  VarConditionFailed,
  UnknownCoherence,
  UnknownName,
  DuplicateName,
  SyntaxError,
  MetaOperationUnsupported,
  ArityMismatch,
  CannotInferImplicit,
  ElaborationTypeMismatch,
  HottTypeError,
  KernelRejected,
  ReductionBudgetExceeded,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::IllTypedDeclaration: return "IllTypedDeclaration";
    case ErrorKind::SourceTargetTypeMismatch: return "SourceTargetTypeMismatch";
    case ErrorKind::MissingBinding: return "MissingBinding";
    case ErrorKind::ExtraBinding: return "ExtraBinding";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotPs: return "NotPs";
    case ErrorKind::NotArrowType: return "NotArrowType";
    case ErrorKind::VarConditionFailed: return "VarConditionFailed";
    case ErrorKind::UnknownCoherence: return "UnknownCoherence";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MetaOperationUnsupported: return "MetaOperationUnsupported";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::CannotInferImplicit: return "CannotInferImplicit";
    case ErrorKind::ElaborationTypeMismatch: return "ElaborationTypeMismatch";
    case ErrorKind::HottTypeError: return "HottTypeError";
    case ErrorKind::KernelRejected: return "KernelRejected";
    case ErrorKind::ReductionBudgetExceeded: return "ReductionBudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class CheckError : public std::runtime_error {
 public:
  CheckError(ErrorKind kind, std::string msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw CheckError(kind, msg);
}

}  // namespace catt2hott
