#ifndef GRAPHENE_NDR_ERROR_HPP
#define GRAPHENE_NDR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphene_ndr {

enum class Errc {
    ConfigParse,
    ConfigValidation,
    DegenerateEnergy,
    NoInputMode,
    GrazingOutput,
    SingularSystem,
    ZeroWidthGap,
    NoGapFound,
    NoNdrDetected,
    MalformedData,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// failure it is without parsing the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

    bool is_config_error() const noexcept {
        return code_ == Errc::ConfigParse || code_ == Errc::ConfigValidation;
    }

private:
    Errc code_;
};

}  // namespace graphene_ndr

#endif
