#include "graphene_ndr/error.hpp"

namespace graphene_ndr {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::ConfigParse: return "ConfigParse";
        case Errc::ConfigValidation: return "ConfigValidation";
        case Errc::DegenerateEnergy: return "DegenerateEnergy";
        case Errc::NoInputMode: return "NoInputMode";
        case Errc::GrazingOutput: return "GrazingOutput";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::ZeroWidthGap: return "ZeroWidthGap";
        case Errc::NoGapFound: return "NoGapFound";
        case Errc::NoNdrDetected: return "NoNdrDetected";
        case Errc::MalformedData: return "MalformedData";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace graphene_ndr
