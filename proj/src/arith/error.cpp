#include "modcert/error.hpp"

namespace modcert {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NotPrime: return "NotPrime";
        case Errc::NonMonic: return "NonMonic";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::SingularFiber: return "SingularFiber";
        case Errc::BadReductionPrime: return "BadReductionPrime";
        case Errc::WeilBoundViolation: return "WeilBoundViolation";
        case Errc::PrecisionExceeded: return "PrecisionExceeded";
        case Errc::NotNormalized: return "NotNormalized";
        case Errc::InvalidPolicy: return "InvalidPolicy";
        case Errc::LemmaPreconditionFailed: return "LemmaPreconditionFailed";
        case Errc::InternalContradiction: return "InternalContradiction";
        case Errc::CharacterEmbeddingUnavailable: return "CharacterEmbeddingUnavailable";
        case Errc::LevelMismatch: return "LevelMismatch";
        case Errc::BadResidualPrime: return "BadResidualPrime";
        case Errc::RemoteUnavailable: return "RemoteUnavailable";
        case Errc::SchemaMismatch: return "SchemaMismatch";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace modcert
