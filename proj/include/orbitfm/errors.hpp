#pragma once

#include <stdexcept>
#include <string>

namespace orbitfm {

/// Base of every failure raised by the engine. Each subclass names one
/// contract violation; a thrown error always means a broken invariant or a
/// transcription bug, never a recoverable condition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ORBITFM_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

ORBITFM_DEFINE_ERROR(ChartMismatch);
ORBITFM_DEFINE_ERROR(NonExactDivision);
ORBITFM_DEFINE_ERROR(NonUnitLaurentSubstitution);
ORBITFM_DEFINE_ERROR(InvalidSpec);
ORBITFM_DEFINE_ERROR(ReexpressionFailed);
ORBITFM_DEFINE_ERROR(ClosedFormMismatch);
ORBITFM_DEFINE_ERROR(DetMismatch);
ORBITFM_DEFINE_ERROR(AnsatzInsufficient);
ORBITFM_DEFINE_ERROR(NonUniqueNormalization);
ORBITFM_DEFINE_ERROR(SeriesRecursionMismatch);
ORBITFM_DEFINE_ERROR(BlockFormMismatch);
ORBITFM_DEFINE_ERROR(PropertyViolation);
ORBITFM_DEFINE_ERROR(EtaPatternMismatch);
ORBITFM_DEFINE_ERROR(SymmetryViolation);
ORBITFM_DEFINE_ERROR(IntegrabilityViolation);
ORBITFM_DEFINE_ERROR(Inconsistent);
ORBITFM_DEFINE_ERROR(ShapeMismatch);
ORBITFM_DEFINE_ERROR(OracleMismatch);
ORBITFM_DEFINE_ERROR(DocumentError);

#undef ORBITFM_DEFINE_ERROR

}  // namespace orbitfm
