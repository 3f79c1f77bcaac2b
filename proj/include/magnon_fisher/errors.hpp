#pragma once

#include <stdexcept>
#include <string>

namespace magnon {

/// Base class of every error raised by the library. `code()` is a short
/// machine-readable tag that sweeps record as the skip reason.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define MAGNON_DEFINE_ERROR(Name, tag)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(tag, what) {}         \
  };

MAGNON_DEFINE_ERROR(DomainError, "domain_error")
MAGNON_DEFINE_ERROR(MultistableRegime, "multistable")
MAGNON_DEFINE_ERROR(NoSteadyState, "no_steady_state")
MAGNON_DEFINE_ERROR(UnstableDrift, "unstable")
MAGNON_DEFINE_ERROR(SingularSystem, "singular_system")
MAGNON_DEFINE_ERROR(StencilCrossesInstability, "stencil_crosses_instability")
MAGNON_DEFINE_ERROR(ZeroInformation, "zero_information")
MAGNON_DEFINE_ERROR(SingularAleph, "singular_aleph")
MAGNON_DEFINE_ERROR(DegenerateNormalMode, "degenerate_normal_mode")
MAGNON_DEFINE_ERROR(NoCrossing, "no_crossing")
MAGNON_DEFINE_ERROR(ConfigError, "config_error")
MAGNON_DEFINE_ERROR(UnknownPreset, "unknown_preset")
MAGNON_DEFINE_ERROR(IoError, "io_error")

#undef MAGNON_DEFINE_ERROR

/// Raised when the 𝔐 matrix of the Gaussian QFI is numerically singular in a
/// direction that carries sensitivity (pure-state degeneracy).
class NearPureState : public Error {
 public:
  NearPureState(const std::string& what, double singular_value)
      : Error("near_pure_state", what), singular_value_(singular_value) {}
  double singular_value() const noexcept { return singular_value_; }

 private:
  double singular_value_;
};

}  // namespace magnon
