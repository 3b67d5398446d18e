#include "pairinglab/error.hpp"

namespace pairinglab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NegativeEigenvalue: return "NegativeEigenvalue";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidState: return "InvalidState";
    case Errc::NotQubit: return "NotQubit";
    case Errc::NotCanonicalPairing: return "NotCanonicalPairing";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::NoTransposition: return "NoTransposition";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::LabelCollision: return "LabelCollision";
    case Errc::InvalidCoeffs: return "InvalidCoeffs";
    case Errc::SupportOverlap: return "SupportOverlap";
    case Errc::WeightMismatch: return "WeightMismatch";
    case Errc::PhaseNotRoot: return "PhaseNotRoot";
    case Errc::DimensionCapExceeded: return "DimensionCapExceeded";
    case Errc::UnknownName: return "UnknownName";
    case Errc::InvalidRank: return "InvalidRank";
    case Errc::Infeasible: return "Infeasible";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pairinglab
