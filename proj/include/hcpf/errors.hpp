#pragma once

#include <stdexcept>
#include <string>

namespace hcpf {

/// Base of every library error; `code()` is the machine-readable tag the CLI
/// puts in its error object.
class Error : public std::runtime_error
{
  public:
    Error(std::string code, std::string const & what)
        : std::runtime_error(what)
        , code_(std::move(code))
    {
    }

    std::string const & code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define HCPF_DEFINE_ERROR(Name, tag)                                          \
    class Name : public Error                                                 \
    {                                                                         \
      public:                                                                 \
        explicit Name(std::string const & what) : Error(tag, what) {}         \
    };

HCPF_DEFINE_ERROR(InvalidArgument, "InvalidArgument")
HCPF_DEFINE_ERROR(InvalidDiscriminant, "InvalidDiscriminant")
HCPF_DEFINE_ERROR(DiscriminantMismatch, "DiscriminantMismatch")
HCPF_DEFINE_ERROR(NotCovered, "NotCovered")
HCPF_DEFINE_ERROR(RoundingUnstable, "RoundingUnstable")
HCPF_DEFINE_ERROR(NonConvergence, "NonConvergence")
HCPF_DEFINE_ERROR(OddValuation, "OddValuation")
HCPF_DEFINE_ERROR(NotApplicable, "NotApplicable")
HCPF_DEFINE_ERROR(OutOfRange, "OutOfRange")
HCPF_DEFINE_ERROR(InvalidParameters, "InvalidParameters")
HCPF_DEFINE_ERROR(CacheCorrupt, "CacheCorrupt")

#undef HCPF_DEFINE_ERROR

} // namespace hcpf
