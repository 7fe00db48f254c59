#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace epilip::cli {

/// Runs one command line. The report goes to `out`, usage diagnostics to
/// `err`. Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit hash, used as the input digest of reports.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace epilip::cli
