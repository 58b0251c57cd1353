#pragma once

// Certificate JSON (schema isospec.certificate/1). Vertices are 1-based in
// serialized form, matching the .isg format. The stored `verified` flag is
// advisory: consumers re-verify before trusting it.

#include <string>

#include "isospec/search.hpp"

namespace isospec {

std::string serialize_certificate(const SparsifierCertificate& cert,
                                  const std::string& basis_kind = "custom");

struct ParsedCertificate {
    SparsifierCertificate certificate;
    std::string basis_kind;  // computed | canonical:<family> | custom
};

// Validates the schema; error messages carry JSON paths.
ParsedCertificate parse_certificate(const std::string& text);

std::string hash_string(std::uint64_t h);

}  // namespace isospec
