#ifndef QMSIEVE_VERSION_HPP
#define QMSIEVE_VERSION_HPP

namespace qms {

/* Embedded in certificates and cache entries; bump on any change of output. */
inline constexpr char const* kToolVersion = "qmsieve 0.1.0";

} // namespace qms

#endif
